#include "doctest.h"

#include "modparam/error.hpp"
#include "modparam/periods.hpp"
#include "modparam/series.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace modparam;

namespace {

EllipticCurve curve(long a1, long a2, long a3, long a4, long a6, long N = 0)
{
    return derive_invariants({Rational(a1), Rational(a2), Rational(a3), Rational(a4), Rational(a6)}, N);
}

double dbl(const Real& x) { return x.to_double(); }

// Real period 2 * int_0^inf dt / |t^2 + e1 - e2| for a curve with one real root e1,
// by tanh-sinh quadrature in double precision.
double real_period_quadrature(const EllipticCurve& E)
{
    double b2 = E.b2.get_d(), b4 = E.b4.get_d(), b6 = E.b6.get_d();
    auto f = [&](double x) { return 4 * x * x * x + b2 * x * x + 2 * b4 * x + b6; };
    double lo = -1e3, hi = 1e3;
    for (int i = 0; i < 200; ++i) {
        double mid = (lo + hi) / 2;
        (f(mid) < 0 ? lo : hi) = mid;
    }
    double e1 = lo;
    // remaining quadratic 4x^2 + (b2 + 4 e1) x + ... has roots e2, conj(e2)
    double s = -(b2 / 4) - e1; // e2 + e3
    double p = -(b6 / 4) / e1; // e2 * e3
    std::complex<double> disc = std::sqrt(std::complex<double>(s * s - 4 * p));
    std::complex<double> e2 = (s + disc) / 2.0;
    auto g = [&](double t) { return 1.0 / std::abs(std::complex<double>(t * t + e1) - e2); };
    double h = 1.0 / 64, sum = 0;
    for (int k = -400; k <= 400; ++k) {
        double u = k * h;
        double t = std::exp(M_PI / 2 * std::sinh(u));
        double w = M_PI / 2 * std::cosh(u) * t;
        sum += g(t) * w;
    }
    return 2 * sum * h;
}

Mat2 random_gamma0(std::mt19937& rng, long N)
{
    std::uniform_int_distribution<long> kd(-2, 2), dd(-6, 6);
    while (true) {
        long c = N * kd(rng), d = dd(rng);
        if (d == 0 || gcd_long(c, d) != 1)
            continue;
        return complete_bottom_row(c, d);
    }
}

}

TEST_CASE("period lattices of 14a1 and 14a2")
{
    auto L1 = period_lattice(curve(1, 0, 1, 4, -6), 128);
    auto L2 = period_lattice(curve(1, 0, 1, -36, -70), 128);
    CHECK(dbl(L1.w1.re) == doctest::Approx(1.981341).epsilon(1e-6));
    CHECK(dbl(L1.w2.re) == doctest::Approx(0.990670).epsilon(1e-6));
    CHECK(dbl(L1.w2.im) == doctest::Approx(1.325491).epsilon(1e-6));
    CHECK(dbl(L2.w1.re) == doctest::Approx(0.990670).epsilon(1e-6));
    CHECK(std::fabs(dbl(L2.w2.re)) < 1e-30);
    CHECK(dbl(L2.w2.im) == doctest::Approx(1.325491).epsilon(1e-6));

    auto R = lattice_relation(L1, L2);
    CHECK(R.kind == LatticeRelationKind::Sublattice);
    CHECK(R.index_in_2 == 2);
    CHECK(lattice_relation(L1, L1).kind == LatticeRelationKind::Equal);
    CHECK(lattice_relation(L2, L1).kind == LatticeRelationKind::Superlattice);
    auto L11 = period_lattice(curve(0, -1, 1, -10, -20), 128);
    CHECK(lattice_relation(L11, L1).kind == LatticeRelationKind::Unrelated);

    Complex two(Real(2L, 160));
    auto A = lattice_from_basis(L11.w1 * two.re, L11.w2, 128);
    auto B = lattice_from_basis(L11.w1, L11.w2 * two.re, 128);
    auto C = lattice_relation(A, B);
    CHECK(C.kind == LatticeRelationKind::CommonSublattice);
    CHECK(C.index_in_1 == 2);
    CHECK(C.index_in_2 == 2);
}

TEST_CASE("real period against quadrature, g2/g3 shadows, homogeneity")
{
    auto E = curve(0, -1, 1, -10, -20);
    auto L = period_lattice(E, 256);
    CHECK(dbl(L.w1.re) == doctest::Approx(real_period_quadrature(E)).epsilon(1e-11));
    Real tol = ldexp(Real(1L, 300), -240);
    CHECK((L.g2 - Complex(Real(E.g2(), 300))).abs() < tol);
    CHECK((L.g3 - Complex(Real(E.g3(), 300))).abs() < tol);

    auto Eu = curve(0, -4, 8, -160, -1280); // (x, y) -> (4x, 8y)
    auto Lu = period_lattice(Eu, 256);
    Complex twice = Lu.w1 * Real(2L, 300);
    CHECK((twice - L.w1).abs() < tol);
    CHECK(abs(Lu.area() * Real(4L, 300) - L.area()) < tol);
}

TEST_CASE("wp Laurent coefficients")
{
    Rational g2(31, 3), g3(-7, 5);
    auto W = wp_laurent(g2, g3, 20);
    CHECK(W.c[2] == g2 / 20);
    CHECK(W.c[3] == g3 / 28);
    CHECK(W.c[4] == W.c[2] * W.c[2] / 3);
    auto Z = wp_laurent(0, 0, 10);
    for (long k = 2; k <= 10; ++k)
        CHECK(Z.c[k] == 0);

    // Residual of wp'^2 = 4 wp^3 - g2 wp - g3 on the truncated series.
    long K = W.K(), T = 2 * K - 1;
    QSeries p = QSeries::monomial(1, -2, T);
    for (long k = 2; k <= K; ++k)
        p = p + QSeries::monomial(W.c[k], 2 * k - 2, T);
    QSeries dp = p.q_derivative(); // z d/dz
    QSeries lhs = dp * dp;          // z^2 wp'^2
    QSeries rhs = (p * p * p * Rational(4) - p * g2 - QSeries::constant(g3, T)) * QSeries::monomial(1, 2, T);
    QSeries r = lhs - rhs;
    for (long n = r.valuation(); n < std::min(r.prec(), 2 * K - 4); ++n)
        CHECK(r.coeff(n) == 0);
    for (long n = p.valuation(); n < p.prec(); ++n)
        if (n % 2 != 0)
            CHECK(p.coeff(n) == 0);
}

TEST_CASE("numeric wp against the differential equation and the Laurent series")
{
    auto E = curve(1, -1, 1, -3, 3);
    auto L = period_lattice(E, 192);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-3, 3);
    Complex g2(Real(E.g2(), 224)), g3(Real(E.g3(), 224));
    for (int i = 0; i < 20; ++i) {
        Complex z(Real(u(rng), 224), Real(u(rng), 224));
        Complex p, dp;
        wp_both(L, z, p, dp);
        Complex r = dp * dp - p * p * p * Real(4L, 224) + g2 * p + g3;
        Real scale = max(Real(1L, 224), (p * p * p).abs());
        CHECK(r.abs() < ldexp(scale, -150));
        // periodicity
        Complex q = wp(L, z + L.w1 * Real(3L, 224) - L.w2);
        CHECK((q - p).abs() < ldexp(max(Real(1L, 224), p.abs()), -150));
    }
    auto W = wp_laurent(E.g2(), E.g3(), 40);
    Complex z(Real(0.05, 224), Real(0.03, 224));
    Complex s = Complex::one(224) / (z * z), zk = Complex::one(224);
    Complex z2 = z * z;
    for (long k = 2; k <= 40; ++k) {
        zk *= z2;
        s += zk * Real(W.c[k], 224);
    }
    CHECK((s - wp(L, z)).abs() < ldexp(Real(1L, 224), -100));
}

TEST_CASE("Eichler integral and the period map for 11a1")
{
    auto E = curve(0, -1, 1, -10, -20, 11);
    auto f = newform_coefficients(E, 20000);
    long bits = 416;
    auto L = period_lattice(E, bits);
    CHECK(eichler_direct(f, Complex(Real(0.1, bits), Real(40L, bits)), bits).abs() < ldexp(Real(1L, bits), -300));

    Mat2 I;
    CHECK(period_map(f, L, I, bits).value.abs().is_zero());

    std::mt19937 rng(11);
    std::vector<std::array<long, 2>> coords;
    Real tol = ldexp(Real(1L, bits), -200);
    for (int i = 0; i < 50; ++i) {
        Mat2 a = random_gamma0(rng, 11), b = random_gamma0(rng, 11);
        auto Ca = period_map(f, L, a, bits), Cb = period_map(f, L, b, bits), Cab = period_map(f, L, a * b, bits);
        CHECK((Cab.raw - Ca.raw - Cb.raw).abs() < tol);
        CHECK(Cab.n1 == Ca.n1 + Cb.n1);
        CHECK(Cab.n2 == Ca.n2 + Cb.n2);
        coords.push_back({Ca.n1, Ca.n2});
    }
    long g = 0;
    for (size_t i = 0; i < coords.size(); ++i)
        for (size_t j = i + 1; j < coords.size(); ++j)
            g = gcd_long(g, coords[i][0] * coords[j][1] - coords[i][1] * coords[j][0]);
    CHECK(g == 1);

    // Reduced evaluation agrees with direct summation where both are feasible.
    Complex z(Real(0.37, bits), Real(0.02, bits));
    Complex d = eichler_direct(f, z, 128), r = eichler_integral(f, L, z, 128);
    CHECK((d - r).abs() < ldexp(Real(1L, 128), -60));
}

TEST_CASE("parametrization image satisfies the curve equation")
{
    auto E = curve(1, -1, 1, -3, 3, 26);
    auto f = newform_coefficients(E, 4000);
    long bits = 160;
    auto L = period_lattice(E, bits);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.05, 0.6);
    for (int i = 0; i < 20; ++i) {
        Complex z(Real(re(rng), bits), Real(im(rng), bits));
        Complex e = eichler_integral(f, L, z, bits);
        Complex p, dp;
        wp_both(L, e, p, dp);
        Complex X = p - Complex(Real(E.b2 / 12, bits + 32));
        Complex Y = (dp - X * Real(E.a1, bits + 32) - Complex(Real(E.a3, bits + 32))) * Real(0.5, bits + 32);
        Complex a1(Real(E.a1, bits)), a2(Real(E.a2, bits)), a3(Real(E.a3, bits)), a4(Real(E.a4, bits)), a6(Real(E.a6, bits));
        Complex r = Y * Y + a1 * X * Y + a3 * Y - X * X * X - a2 * X * X - a4 * X - a6;
        CHECK(r.abs() < ldexp(max(Real(1L, bits), (X * X * X).abs()), -100));
    }
}
