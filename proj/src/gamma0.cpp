#include "modparam/gamma0.hpp"

#include "modparam/error.hpp"

#include <algorithm>

namespace modparam {

std::string CuspInfo::to_string() const
{
    if (c == 0)
        return "oo";
    if (c == 1)
        return std::to_string(a);
    return std::to_string(a) + "/" + std::to_string(c);
}

long gamma0_index(long N)
{
    long r = N;
    for (long p : prime_factors(N))
        r = r / p * (p + 1);
    return r;
}

Gamma0::Gamma0(long N) : N_(N)
{
    require(N >= 1, Errc::InvalidArgument, "level must be positive");
    table_.assign(N * N, -1);
    std::vector<long> units;
    for (long u = 1; u <= N; ++u)
        if (gcd_long(u, N) == 1)
            units.push_back(u % N);
    // Classes of P^1(Z/N): orbits of primitive pairs under scaling by units.
    std::vector<std::pair<long, long>> classes;
    for (long c = 0; c < N; ++c)
        for (long d = 0; d < N; ++d) {
            if (gcd_long(gcd_long(c, d), N) != 1 || table_[c * N + d] >= 0)
                continue;
            long idx = static_cast<long>(classes.size());
            classes.push_back({c, d});
            for (long u : units)
                table_[(u * c % N) * N + (u * d % N)] = idx;
        }
    if (N == 1) {
        table_[0] = 0;
        classes = {{0, 0}};
    }
    long n = static_cast<long>(classes.size());
    std::vector<char> seen(n, 0);
    coset_cusp_.assign(n, -1);
    coset_offset_.assign(n, 0);
    reps_.assign(n, Mat2{});

    for (long Q : divisors(N))
        if (gcd_long(Q, N / Q) == 1)
            exact_.push_back(Q);

    auto add_cusp = [&](const Mat2& g, long q) {
        CuspInfo info;
        info.gamma = g;
        info.al_q = q;
        long p, r;
        g.apply_cusp(1, 0, p, r);
        info.a = r == 0 ? 1 : p;
        info.c = r;
        long k = 0;
        while (true) {
            Mat2 gk = g * translation(k);
            long i = coset_of(gk);
            if (seen[i])
                break;
            seen[i] = 1;
            coset_cusp_[i] = static_cast<long>(cusps_.size());
            coset_offset_[i] = k;
            reps_[i] = gk;
            info.cosets.push_back(i);
            ++k;
        }
        info.width = k;
        cusps_.push_back(info);
    };
    add_cusp(Mat2{}, 1);
    for (long Q : exact_) {
        if (Q == 1)
            continue;
        Mat2 g = gamma_q(Q);
        if (!seen[coset_of(g)])
            add_cusp(g, Q);
    }
    for (long i = 0; i < n; ++i) {
        if (seen[i])
            continue;
        long c = classes[i].first, d = classes[i].second;
        // lift (c, d) to a primitive integer pair
        long cc = c == 0 ? N : c, dd = d;
        while (gcd_long(cc, dd) != 1)
            dd += N;
        add_cusp(complete_bottom_row(cc, dd), 0);
    }
    require(index() == gamma0_index(N), Errc::CosetDecompositionFailed, "coset count mismatch");
}

long Gamma0::coset_of_row(long c, long d) const
{
    if (N_ == 1)
        return 0;
    long i = table_[mod_long(c, N_) * N_ + mod_long(d, N_)];
    require(i >= 0, Errc::CosetDecompositionFailed, "bottom row is not primitive modulo N");
    return i;
}

long Gamma0::coset_of(const Mat2& g) const { return coset_of_row(g.c, g.d); }

long Gamma0::cusp_of(long p, long q) const
{
    long g = gcd_long(p, q);
    require(g != 0, Errc::InvalidArgument, "invalid cusp");
    p /= g;
    q /= g;
    if (q == 0)
        return 0;
    // a matrix with first column (p, q)
    long x, y;
    ext_gcd(p, q, x, y); // p x + q y = 1
    Mat2 m{p, -y, q, x};
    return coset_cusp_[coset_of(m)];
}

long Gamma0::al_cusp(long Q) const
{
    for (size_t i = 0; i < cusps_.size(); ++i)
        if (cusps_[i].al_q == Q)
            return static_cast<long>(i);
    // W_Q(oo) may coincide with another listed cusp only if Q = 1.
    return cusp_of(gamma_q(Q).a, gamma_q(Q).c);
}

Gamma0::Decomposition Gamma0::decompose(const Mat2& g) const
{
    require(g.det() == 1, Errc::CosetDecompositionFailed, "matrix is not in SL2(Z)");
    long i = coset_of(g);
    Decomposition D;
    D.cusp = coset_cusp_[i];
    D.offset = coset_offset_[i];
    D.delta = g * reps_[i].adjugate();
    require(D.delta.c % N_ == 0 && D.delta.det() == 1, Errc::CosetDecompositionFailed,
            "decomposition of " + g.to_string() + " failed");
    return D;
}

Mat2 Gamma0::gamma_q(long Q) const
{
    require(N_ % Q == 0 && gcd_long(Q, N_ / Q) == 1, Errc::InvalidArgument,
            std::to_string(Q) + " is not an exact divisor of " + std::to_string(N_));
    if (Q == 1)
        return Mat2{};
    return complete_bottom_row(N_ / Q, Q);
}

Mat2 Gamma0::atkin_lehner(long Q) const
{
    if (Q == 1)
        return Mat2{};
    Mat2 g = gamma_q(Q);
    return {g.a * Q, g.b, g.c * Q, g.d};
}

std::vector<Mat2> Gamma0::prime_level_reps() const
{
    require(is_prime(N_), Errc::InvalidArgument, "level is not prime");
    std::vector<Mat2> out{Mat2{}};
    for (long j = 0; j < N_; ++j)
        out.push_back({0, -1, 1, j});
    return out;
}

}
