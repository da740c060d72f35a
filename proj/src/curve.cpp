#include "modparam/curve.hpp"

#include "modparam/error.hpp"

#include <cstdlib>

namespace modparam {

Rational EllipticCurve::residual(const Rational& x, const Rational& y) const
{
    return y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6;
}

EllipticCurve derive_invariants(const std::array<Rational, 5>& a, long conductor, const std::string& label)
{
    EllipticCurve E;
    E.label = label;
    E.a1 = a[0];
    E.a2 = a[1];
    E.a3 = a[2];
    E.a4 = a[3];
    E.a6 = a[4];
    E.conductor = conductor;
    E.b2 = E.a1 * E.a1 + 4 * E.a2;
    E.b4 = 2 * E.a4 + E.a1 * E.a3;
    E.b6 = E.a3 * E.a3 + 4 * E.a6;
    E.b8 = E.a1 * E.a1 * E.a6 + 4 * E.a2 * E.a6 - E.a1 * E.a3 * E.a4 + E.a2 * E.a3 * E.a3 - E.a4 * E.a4;
    E.c4 = E.b2 * E.b2 - 24 * E.b4;
    E.c6 = -E.b2 * E.b2 * E.b2 + 36 * E.b2 * E.b4 - 216 * E.b6;
    E.disc = -E.b2 * E.b2 * E.b8 - 8 * E.b4 * E.b4 * E.b4 - 27 * E.b6 * E.b6 + 9 * E.b2 * E.b4 * E.b6;
    require(E.disc != 0, Errc::SingularCurve, "discriminant is zero" + (label.empty() ? "" : " for " + label));
    E.j = E.c4 * E.c4 * E.c4 / E.disc;
    return E;
}

const char* reduction_name(Reduction r)
{
    switch (r) {
    case Reduction::Good: return "good";
    case Reduction::SplitMultiplicative: return "split multiplicative";
    case Reduction::NonsplitMultiplicative: return "nonsplit multiplicative";
    case Reduction::Additive: return "additive";
    }
    return "";
}

namespace {

long modp(const Rational& r, long p)
{
    Integer P = p;
    Integer den = mod_floor(r.get_den(), P);
    require(den != 0, Errc::DenominatorNotCoprime, "model is not integral at " + std::to_string(p));
    Integer inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
    return mod_floor(Integer(r.get_num() * inv), P).get_si();
}

bool divides(long p, const Rational& r)
{
    Integer P = p;
    return mod_floor(r.get_num(), P) == 0;
}

struct ModpCurve {
    long p, a1, a2, a3, a4, a6;
    ModpCurve(const EllipticCurve& E, long p_)
        : p(p_), a1(modp(E.a1, p_)), a2(modp(E.a2, p_)), a3(modp(E.a3, p_)), a4(modp(E.a4, p_)), a6(modp(E.a6, p_)) {}
    long mul(long a, long b) const { return static_cast<long>((static_cast<__int128>(a) * b) % p); }
    long f(long x) const
    {
        long x2 = mul(x, x);
        return mod_long(mul(x2, x) + mul(a2, x2) + mul(a4, x) + a6, p);
    }
    long h(long x) const { return mod_long(mul(a1, x) + a3, p); }
};

long count_affine(const ModpCurve& C)
{
    long p = C.p;
    if (p == 2) {
        long n = 0;
        for (long x = 0; x < 2; ++x)
            for (long y = 0; y < 2; ++y)
                if (mod_long(y * y + C.h(x) * y - C.f(x), 2) == 0)
                    ++n;
        return n;
    }
    // y^2 + h y = f  <=>  (2y + h)^2 = h^2 + 4 f
    std::vector<signed char> chi(p, -1);
    chi[0] = 0;
    for (long t = 1; t < p; ++t)
        chi[C.mul(t, t)] = 1;
    long n = 0;
    for (long x = 0; x < p; ++x) {
        long h = C.h(x);
        long d = mod_long(C.mul(h, h) + 4 * C.f(x), p);
        n += 1 + chi[d];
    }
    return n;
}

}

Reduction reduction_type(const EllipticCurve& E, long p)
{
    if (!divides(p, E.disc))
        return Reduction::Good;
    if (divides(p, E.c4))
        return Reduction::Additive;
    ModpCurve C(E, p);
    // Locate the singular point, then test whether the tangent-slope quadratic
    // m^2 + a1 m - (3 x0 + a2) has a root in F_p.
    long x0 = -1;
    for (long x = 0; x < p && x0 < 0; ++x) {
        for (long y = 0; y < p; ++y) {
            long F = mod_long(C.mul(y, y) + C.mul(C.h(x), y) - C.f(x), p);
            long Fy = mod_long(2 * y + C.h(x), p);
            long Fx = mod_long(C.mul(C.a1, y) - 3 * C.mul(x, x) - 2 * C.mul(C.a2, x) - C.a4, p);
            if (F == 0 && Fx == 0 && Fy == 0) {
                x0 = x;
                break;
            }
        }
    }
    require(x0 >= 0, Errc::InvalidArgument, "no singular point found modulo " + std::to_string(p));
    long c = mod_long(-(3 * x0 + C.a2), p);
    for (long m = 0; m < p; ++m)
        if (mod_long(C.mul(m, m) + C.mul(C.a1, m) + c, p) == 0)
            return Reduction::SplitMultiplicative;
    return Reduction::NonsplitMultiplicative;
}

long a_p(const EllipticCurve& E, long p, long budget)
{
    require(p <= budget, Errc::PrimeTooLarge, "prime " + std::to_string(p) + " exceeds counting budget");
    ModpCurve C(E, p);
    // Uniform formula: p - #(affine points of the reduction), valid for good and bad p.
    return p - count_affine(C);
}

NewformCoefficients newform_coefficients(const EllipticCurve& E, long n_max, long budget)
{
    require(n_max >= 1, Errc::InvalidArgument, "n_max must be positive");
    NewformCoefficients f;
    f.level = E.conductor;
    f.manin = E.manin;
    f.a.assign(n_max + 1, 0);
    f.a[1] = 1;
    std::vector<long> spf(n_max + 1, 0);
    for (long i = 2; i <= n_max; ++i)
        if (spf[i] == 0)
            for (long j = i; j <= n_max; j += i)
                if (spf[j] == 0)
                    spf[j] = i;
    for (long p = 2; p <= n_max; ++p) {
        if (spf[p] != p)
            continue;
        long ap = a_p(E, p, budget);
        bool bad = E.conductor > 0 ? E.conductor % p == 0 : divides(p, E.disc);
        long prev2 = 1, prev = ap;
        f.a[p] = ap;
        for (long q = p; q <= n_max / p;) {
            q *= p;
            long cur = bad ? prev * ap : ap * prev - p * prev2;
            f.a[q] = cur;
            prev2 = prev;
            prev = cur;
        }
    }
    for (long n = 2; n <= n_max; ++n) {
        long p = spf[n], m = n;
        while (m % p == 0)
            m /= p;
        if (m != 1)
            f.a[n] = f.a[n / m] * f.a[m];
    }
    return f;
}

void validate_conductor(const EllipticCurve& E)
{
    long N = E.conductor;
    require(N >= 1, Errc::ConductorMismatch, "conductor must be positive");
    for (long p : prime_factors(N)) {
        require(divides(p, E.disc), Errc::ConductorMismatch,
                std::to_string(p) + " divides the conductor but not the discriminant");
        long e = 0, M = N;
        while (M % p == 0) {
            M /= p;
            ++e;
        }
        Reduction r = reduction_type(E, p);
        require(r != Reduction::Good, Errc::ConductorMismatch, "good reduction at " + std::to_string(p));
        if (r == Reduction::Additive)
            require(e >= 2, Errc::ConductorMismatch, "additive reduction needs exponent >= 2 at " + std::to_string(p));
        else
            require(e == 1, Errc::ConductorMismatch, "multiplicative reduction needs exponent 1 at " + std::to_string(p));
    }
    // Primes of bad reduction of the (assumed minimal) model must divide N.
    Integer D = abs(E.disc.get_num());
    for (long p = 2; p < 1000; ++p) {
        if (!is_prime(p) || mod_floor(D, Integer(p)) != 0)
            continue;
        require(N % p == 0, Errc::ConductorMismatch, std::to_string(p) + " divides the discriminant but not the conductor");
    }
}

bool on_curve(const EllipticCurve& E, const Point& P)
{
    return P.infinity || E.residual(P.x, P.y) == 0;
}

Point negate(const EllipticCurve& E, const Point& P)
{
    if (P.infinity)
        return P;
    return Point::affine(P.x, -P.y - E.a1 * P.x - E.a3);
}

Point add(const EllipticCurve& E, const Point& P, const Point& Q)
{
    if (P.infinity)
        return Q;
    if (Q.infinity)
        return P;
    Rational lambda, nu;
    if (P.x == Q.x) {
        if (P.y + Q.y + E.a1 * Q.x + E.a3 == 0)
            return Point::at_infinity();
        Rational num = 3 * P.x * P.x + 2 * E.a2 * P.x + E.a4 - E.a1 * P.y;
        Rational den = 2 * P.y + E.a1 * P.x + E.a3;
        lambda = num / den;
        nu = (-P.x * P.x * P.x + E.a4 * P.x + 2 * E.a6 - E.a3 * P.y) / den;
    } else {
        lambda = (Q.y - P.y) / (Q.x - P.x);
        nu = (P.y * Q.x - Q.y * P.x) / (Q.x - P.x);
    }
    Rational x3 = lambda * lambda + E.a1 * lambda - E.a2 - P.x - Q.x;
    Rational y3 = -(lambda + E.a1) * x3 - nu - E.a3;
    return Point::affine(x3, y3);
}

Point multiply(const EllipticCurve& E, const Point& P, long k)
{
    if (k < 0)
        return multiply(E, negate(E, P), -k);
    Point r = Point::at_infinity(), b = P;
    while (k) {
        if (k & 1)
            r = add(E, r, b);
        k >>= 1;
        if (k)
            b = add(E, b, b);
    }
    return r;
}

long torsion_order(const EllipticCurve& E, const Point& P, long bound)
{
    Point Q = P;
    for (long n = 1; n <= bound; ++n) {
        if (Q.infinity)
            return n;
        Q = add(E, Q, P);
    }
    return 0;
}

std::vector<Point> small_integral_points(const EllipticCurve& E, long bound)
{
    std::vector<Point> out;
    for (long x = -bound; x <= bound; ++x) {
        Rational X(x);
        // y^2 + (a1 x + a3) y - f(x) = 0
        Rational h = E.a1 * X + E.a3;
        Rational f = X * X * X + E.a2 * X * X + E.a4 * X + E.a6;
        Rational d = h * h + 4 * f;
        if (d < 0 || !is_integer(d))
            continue;
        Integer s;
        mpz_sqrt(s.get_mpz_t(), d.get_num_mpz_t());
        if (s * s != d.get_num())
            continue;
        for (int sg : {1, -1}) {
            Rational y = (Rational(sg * s) - h) / 2;
            if (is_integer(y) && E.residual(X, y) == 0) {
                Point P = Point::affine(X, y);
                if (out.empty() || !(out.back() == P))
                    out.push_back(P);
            }
        }
    }
    return out;
}

QPoly division_polynomial(const EllipticCurve& E, long n)
{
    require(n >= 0, Errc::InvalidArgument, "division polynomial index must be nonnegative");
    const QPoly F = {E.b6, 2 * E.b4, E.b2, Rational(4)};
    const QPoly F2 = poly_mul(F, F);
    std::vector<QPoly> f{QPoly{}, QPoly{Rational(1)}, QPoly{Rational(1)},
                         QPoly{E.b8, 3 * E.b6, 3 * E.b4, E.b2, Rational(3)},
                         QPoly{E.b4 * E.b8 - E.b6 * E.b6, E.b2 * E.b8 - E.b4 * E.b6, 10 * E.b8, 10 * E.b6, 5 * E.b4,
                               E.b2, Rational(2)}};
    auto cube = [](const QPoly& a) { return poly_mul(a, poly_mul(a, a)); };
    auto sq = [](const QPoly& a) { return poly_mul(a, a); };
    for (long k = 5; k <= n; ++k) {
        long m = k / 2;
        QPoly r;
        if (k % 2) {
            QPoly u = poly_mul(f[m + 2], cube(f[m]));
            QPoly v = poly_mul(f[m - 1], cube(f[m + 1]));
            r = m % 2 == 0 ? poly_sub(poly_mul(F2, u), v) : poly_sub(u, poly_mul(F2, v));
        } else {
            r = poly_mul(f[m], poly_sub(poly_mul(f[m + 2], sq(f[m - 1])), poly_mul(f[m - 2], sq(f[m + 1]))));
        }
        poly_trim(r);
        f.push_back(r);
    }
    return f[n];
}

QPoly torsion_polynomial(const EllipticCurve& E, long n)
{
    require(n >= 1, Errc::InvalidArgument, "torsion order must be positive");
    QPoly p = division_polynomial(E, n);
    if (n % 2 == 0)
        p = poly_mul(p, QPoly{E.b6, 2 * E.b4, E.b2, Rational(4)});
    Rational lead = p.back();
    for (auto& c : p)
        c /= lead;
    return p;
}

}
