#pragma once

#include "modparam/sl2.hpp"

#include <utility>
#include <vector>

namespace modparam {

struct CuspInfo {
    long a = 1, c = 0;   // representative a/c; c = 0 is infinity
    long width = 1;
    Mat2 gamma;          // gamma(oo) = a/c
    long al_q = 0;       // Q with gamma = gamma_Q when the cusp is W_Q(oo), else 0
    std::vector<long> cosets; // coset index of gamma T^k, k = 0..width-1
    std::string to_string() const;
};

// Right cosets Gamma0(N)\SL2(Z), indexed by P^1(Z/N), and the cusps of Gamma0(N).
class Gamma0 {
public:
    explicit Gamma0(long N);

    long level() const { return N_; }
    long index() const { return static_cast<long>(reps_.size()); }
    // Representative of each coset: gamma_rho T^k for the cusp rho and offset k of that coset.
    const std::vector<Mat2>& coset_reps() const { return reps_; }
    long coset_of(const Mat2& g) const;
    long coset_of_row(long c, long d) const;

    const std::vector<CuspInfo>& cusps() const { return cusps_; }
    long cusp_of(long p, long q) const;
    long cusp_of_coset(long i) const { return coset_cusp_[i]; }
    long offset_of_coset(long i) const { return coset_offset_[i]; }
    long cusp_index_infinity() const { return 0; }
    long al_cusp(long Q) const;

    // g = delta * gamma_rho * T^k with delta in Gamma0(N).
    struct Decomposition {
        Mat2 delta;
        long cusp = 0, offset = 0;
    };
    Decomposition decompose(const Mat2& g) const;

    // Exact divisors Q of N (gcd(Q, N/Q) = 1), ascending, including 1 and N.
    const std::vector<long>& exact_divisors() const { return exact_; }
    // gamma_Q = (x, y; N/Q, Q) in SL2(Z), so gamma_Q z = W_Q(z / Q).
    Mat2 gamma_q(long Q) const;
    // W_Q = (Q x, y; N, Q) of determinant Q.
    Mat2 atkin_lehner(long Q) const;

    // The (0, -1; 1, j) representatives plus the identity, for prime N.
    std::vector<Mat2> prime_level_reps() const;

private:
    long N_;
    std::vector<long> table_; // (c mod N) * N + (d mod N) -> coset index, -1 if not primitive
    std::vector<Mat2> reps_;
    std::vector<CuspInfo> cusps_;
    std::vector<long> coset_cusp_, coset_offset_;
    std::vector<long> exact_;
};

// [SL2(Z) : Gamma0(N)] = N prod_{p | N} (1 + 1/p).
long gamma0_index(long N);

}
