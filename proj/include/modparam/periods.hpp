#pragma once

#include "modparam/curve.hpp"
#include "modparam/real.hpp"
#include "modparam/sl2.hpp"

#include <vector>

namespace modparam {

constexpr long kDefaultBits = 256;

struct PeriodLattice {
    // Im(w2 / w1) > 0 and 0 <= Re(w2 / w1) < 1; w1 is the real period when one exists.
    Complex w1, w2;
    long bits = kDefaultBits;
    // Lattice invariants from Eisenstein series, and their exact shadows c4/12, c6/216.
    Complex g2, g3;
    Rational g2_exact, g3_exact;
    // Gauss-reduced basis of the same lattice, used for evaluating wp.
    Complex r1, r2;

    Complex tau() const { return w2 / w1; }
    Real area() const;
    // Real coordinates (x, y) with z = x w1 + y w2.
    void coordinates(const Complex& z, Real& x, Real& y) const;
    Complex point(const Rational& x, const Rational& y) const;
};

PeriodLattice period_lattice(const EllipticCurve& E, long bits = kDefaultBits);
// Lattice spanned by (w1, w2), normalised as above; g2, g3 evaluated numerically.
PeriodLattice lattice_from_basis(const Complex& w1, const Complex& w2, long bits);

// E4(tau), E6(tau) by their q-series (tau should have a reasonably large imaginary part).
void eisenstein_series(const Complex& tau, long bits, Complex& E4, Complex& E6);

// Laurent coefficients of wp(z) = z^-2 + sum_{k >= 2} c[k] z^(2k-2).
struct WpLaurent {
    Rational g2, g3;
    std::vector<Rational> c; // c[0], c[1] unused
    long K() const { return static_cast<long>(c.size()) - 1; }
};

WpLaurent wp_laurent(const Rational& g2, const Rational& g3, long K);

Complex wp(const PeriodLattice& L, const Complex& z);
Complex wp_prime(const PeriodLattice& L, const Complex& z);
void wp_both(const PeriodLattice& L, const Complex& z, Complex& p, Complex& dp);

struct LatticePoint {
    long n1 = 0, n2 = 0;
    Complex value; // n1 w1 + n2 w2
    Complex raw;   // the unsnapped input
};

// Nearest lattice point; LatticeSnapFailed unless within 2^-(bits/2) (relative to |w1|).
LatticePoint snap_to_lattice(const PeriodLattice& L, const Complex& z, long bits);

// Number of terms of sum (a_n/n) q^n needed for 2^-bits accuracy at the given Im z (in units of the width).
long eichler_terms_needed(double im_z, long bits);

// sum (m a_n / n) q^n by direct summation; ConvergenceBudgetExceeded if f is too short.
Complex eichler_direct(const NewformCoefficients& f, const Complex& z, long bits);
// As above, after moving z by an element of Gamma0(N) with a larger imaginary part.
Complex eichler_integral(const NewformCoefficients& f, const PeriodLattice& L, const Complex& z, long bits);

// C(g) = eps(g z) - eps(z), snapped to the lattice.
LatticePoint period_map(const NewformCoefficients& f, const PeriodLattice& L, const Mat2& g, long bits);

enum class LatticeRelationKind { Equal, Sublattice, Superlattice, CommonSublattice, Unrelated };
const char* lattice_relation_name(LatticeRelationKind k);

struct LatticeRelation {
    LatticeRelationKind kind = LatticeRelationKind::Unrelated;
    // Rows of M give (L1.w1, L1.w2) in the basis (L2.w1, L2.w2).
    Rational m[2][2];
    // Basis of L3 = L1 n L2 in L2 coordinates, and its indices in L1 and L2.
    long l3[2][2] = {{0, 0}, {0, 0}};
    long index_in_1 = 0, index_in_2 = 0;
};

LatticeRelation lattice_relation(const PeriodLattice& L1, const PeriodLattice& L2, long denom_bound = 1000);

struct TraceSample {
    Complex z, eps;
};

// Samples eps along a polyline, `samples` points per segment plus the final vertex.
std::vector<TraceSample> eichler_trace(const NewformCoefficients& f, const PeriodLattice& L,
                                       const std::vector<Complex>& vertices, long samples, long bits);

}
