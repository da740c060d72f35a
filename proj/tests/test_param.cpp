#include "doctest.h"

#include "modparam/param.hpp"
#include "modparam/records.hpp"

#include <random>

using namespace modparam;

namespace {

EllipticCurve curve(const char* label) { return find_curve(label).curve(); }

const Parametrization& param(const char* label)
{
    static std::map<std::string, std::unique_ptr<Parametrization>> cache;
    auto& p = cache[label];
    if (!p)
        p = std::make_unique<Parametrization>(curve(label), 256);
    return *p;
}

void check_coeffs(const QSeries& s, long from, const std::vector<long>& expected)
{
    for (size_t i = 0; i < expected.size(); ++i) {
        INFO("coefficient " << from + static_cast<long>(i));
        CHECK(s.coeff(from + static_cast<long>(i)) == expected[i]);
    }
}

QSeries constant(long c, long T) { return QSeries::constant(Rational(c), T); }

}

TEST_CASE("Gamma0 cosets, cusps and decomposition")
{
    for (long N : {1L, 11L, 14L, 26L, 48L, 96L}) {
        Gamma0 G(N);
        CHECK(G.index() == gamma0_index(N));
        long widths = 0;
        for (const auto& c : G.cusps())
            widths += c.width;
        CHECK(widths == G.index());
    }
    CHECK(Gamma0(11).index() == 12);
    CHECK(Gamma0(26).index() == 42);
    CHECK(Gamma0(11).cusps().size() == 2);
    CHECK(Gamma0(26).cusps().size() == 4);
    CHECK(Gamma0(96).cusps().size() == 16);

    Gamma0 G(26);
    for (long Q : G.exact_divisors()) {
        Mat2 g = G.gamma_q(Q);
        CHECK(g.det() == 1);
        const CuspInfo& c = G.cusps()[G.al_cusp(Q)];
        CHECK(c.al_q == Q);
        CHECK(c.width == Q);
        Mat2 W = G.atkin_lehner(Q);
        CHECK(W.det() == Q);
        CHECK(W.c % 26 == 0);
    }

    std::mt19937 rng(7);
    std::uniform_int_distribution<long> dist(-40, 40);
    for (int t = 0; t < 200; ++t) {
        long c = dist(rng), d = dist(rng);
        if (gcd_long(c, d) != 1)
            continue;
        Mat2 g = complete_bottom_row(c, d) * translation(dist(rng));
        auto dec = G.decompose(g);
        CHECK(dec.delta.in_gamma0(26));
        const CuspInfo& cu = G.cusps()[dec.cusp];
        CHECK(dec.delta * cu.gamma * translation(dec.offset) == g);
        CHECK(dec.offset >= 0);
        CHECK(dec.offset < cu.width);
    }
}

TEST_CASE("expansion at infinity for 14a1 and 14a2 matches the printed tables")
{
    const long T = 8;
    {
        EllipticCurve E = curve("14a1");
        auto e = expand_infinity(E, newform_coefficients(E, 20), T);
        QSeries X = e.X, Y = e.Y;
        check_coeffs(X - constant(2, T), -2, {1, 1, 0, 2, 2, 3});
        check_coeffs(-Y - X * Rational(2) - constant(2, T), -3, {1, 0, 2, 0, 5, 4, 2});
        check_coeffs(X * X + Y * Rational(2) - X + constant(2, T), -4, {1, 0, 0, -1, 0, -2, 8, 5});
    }
    {
        EllipticCurve E = curve("14a2");
        auto e = expand_infinity(E, newform_coefficients(E, 20), T);
        QSeries X = e.X, Y = e.Y;
        check_coeffs(X - constant(2, T), -2, {1, 1, 0, 2, 10, -5});
        check_coeffs(-Y - X * Rational(2) - constant(2, T), -3, {1, 0, 2, 0, -3, -4, 2});
        check_coeffs(X * X + Y * Rational(2) - X - constant(14, T), -4, {1, 0, 0, -1, 0, 14, 0, 29});
    }
}

TEST_CASE("expansion at infinity for 15a3 and 15a4 matches the printed q^11 terms")
{
    EllipticCurve E3 = curve("15a3"), E4 = curve("15a4");
    auto e3 = expand_infinity(E3, newform_coefficients(E3, 20), 12);
    auto e4 = expand_infinity(E4, newform_coefficients(E4, 20), 12);
    check_coeffs(e3.X, -2, {1, 1, 1, 2, 3, 1});
    check_coeffs(e4.X, -2, {1, 1, 1, 2, -5, 9});
    CHECK(e3.X.coeff(11) == -6);
    CHECK(e4.X.coeff(11) == 7);
}

TEST_CASE("Parametrization at infinity reproduces expand_infinity")
{
    const auto& P = param("11a1");
    auto a = P.expand(P.group().cusp_index_infinity(), 50);
    auto b = expand_infinity(P.curve(), P.newform(60), 50);
    CHECK(a.X == b.X);
    CHECK(a.Y == b.Y);
    CHECK(a.X.coeff(-2) == 1);
    CHECK(a.Y.coeff(-3) == -1);
}

TEST_CASE("residual invariants vanish exactly at every cusp")
{
    for (const char* lab : {"11a1", "26b1", "14a1", "14a2", "15a4", "37a1"}) {
        const auto& P = param(lab);
        const EllipticCurve& E = P.curve();
        for (size_t c = 0; c < P.group().cusps().size(); ++c) {
            INFO(lab << " cusp " << P.group().cusps()[c].to_string());
            auto e = P.expand(static_cast<long>(c), 60);
            CHECK(e.X.prec() == 60);
            CHECK(weierstrass_residual(E, e.X, e.Y).is_zero());
            CHECK(differential_residual(E, E.manin, e.slash, e.X, e.Y).is_zero());
        }
    }
}

TEST_CASE("recursion agrees with the direct wp composition oracle")
{
    for (const char* lab : {"11a1", "26b1", "14a1", "96a3"}) {
        const auto& P = param(lab);
        const EllipticCurve& E = P.curve();
        for (size_t c = 0; c < P.group().cusps().size(); ++c) {
            const CuspData& D = P.cusp_data(static_cast<long>(c));
            if (!D.exact)
                continue;
            INFO(lab << " cusp " << D.info.to_string());
            const long T = 24;
            auto e = P.expand(static_cast<long>(c), T);
            QSeries X, Y;
            Rational x0 = D.pole ? Rational(0) : D.point.x, y0 = D.pole ? Rational(0) : D.point.y;
            compose_expansion<Rational>(E, E.manin, e.slash, D.pole, x0, y0, X, Y, T);
            CHECK(X == e.X);
            CHECK(Y == e.Y);
        }
    }
}

TEST_CASE("cusp data: Atkin-Lehner signs and values at cusps")
{
    const auto& P = param("11a1");
    const CuspData& D = P.cusp_data(P.group().al_cusp(11));
    // W_11 acts on f by -a_11.
    CHECK(D.al_sign == -P.newform(20)[11]);
    CHECK(D.al_sign * D.al_sign == 1);
    CHECK_FALSE(D.pole);
    CHECK(D.kappa_x == Rational(1, 5));
    CHECK(D.kappa_y == 0);
    CHECK(D.point == Point::affine(16, -61));
    CHECK(torsion_order(P.curve(), D.point) == 5);

    for (const char* lab : {"26b1", "14a1", "15a4", "96a3"}) {
        const auto& Q = param(lab);
        const long N = Q.curve().conductor;
        for (long q : Q.group().exact_divisors()) {
            const CuspData& C = Q.cusp_data(Q.group().al_cusp(q));
            INFO(lab << " Q = " << q);
            long expected = 1;
            bool squarefree = true;
            for (long p : prime_factors(q)) {
                if ((N / p) % p == 0)
                    squarefree = false;
                expected *= -Q.newform(20)[p];
            }
            if (squarefree)
                CHECK(C.al_sign == expected);
            if (!C.pole)
                CHECK(on_curve(Q.curve(), C.point));
        }
    }
}

TEST_CASE("11a1 at the cusp 0: series value agrees with the numeric pipeline")
{
    const auto& P = param("11a1");
    const EllipticCurve& E = P.curve();
    const long c = P.group().al_cusp(11);
    const long T = 120;
    auto e = P.expand(c, T);
    const long bits = 256;
    Complex z0(Real(Rational(3, 10), bits), Real(3L, bits));
    Complex q = exp(Complex::i(bits) * Real::pi(bits) * Real(2L, bits) * z0 * Complex(Real(Rational(1, 11), bits)));
    Complex sx(bits), sy(bits);
    {
        Complex acc(bits);
        for (long n = T - 1; n >= 0; --n)
            acc = acc * q + Complex(Real(e.X.coeff(n), bits));
        sx = acc;
        acc = Complex(bits);
        for (long n = T - 1; n >= 0; --n)
            acc = acc * q + Complex(Real(e.Y.coeff(n), bits));
        sy = acc;
    }
    Complex w = e.gamma.apply(z0);
    Complex eps = P.eichler(w, bits);
    Complex p(bits), dp(bits);
    wp_both(P.lattice(), eps, p, dp);
    Complex X = p - Complex(Real(E.b2 / 12, bits));
    Complex Y = (dp - X * Real(E.a1, bits) - Complex(Real(E.a3, bits))) * Real(Rational(1, 2), bits);
    Real tol = ldexp(Real(1L, bits), -128);
    CHECK(abs(X - sx) < tol);
    CHECK(abs(Y - sy) < tol);
}

TEST_CASE("two-torsion constant point (case iii)")
{
    // Natural occurrence: 14a1 at the cusp of W_2 maps to a point of order 2.
    const auto& P = param("14a1");
    const EllipticCurve& E = P.curve();
    const long c = P.group().al_cusp(2);
    auto e = P.expand(c, 40);
    CHECK(e.kind == RecursionCase::TwoTorsion);
    Rational x0 = e.X.coeff(0), y0 = e.Y.coeff(0);
    CHECK(2 * y0 + E.a1 * x0 + E.a3 == 0);
    CHECK(torsion_order(E, Point::affine(x0, y0)) == 2);
    CHECK(weierstrass_residual(E, e.X, e.Y).is_zero());

    // Synthetic: y^2 = x^3 - x, constant point (0, 0), an arbitrary slash series.
    EllipticCurve F = derive_invariants({0, 0, 0, -1, 0});
    std::vector<Rational> c_n;
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> dist(-9, 9);
    c_n.push_back(Rational(3, 2));
    for (int n = 2; n < 60; ++n)
        c_n.push_back(Rational(dist(rng), 1 + (n % 3)));
    QSeries slash(5, 1, c_n, 60);
    const long T = 40;
    QSeries X, Y;
    compose_expansion<Rational>(F, 1, slash, false, Rational(0), Rational(0), X, Y, 3);
    run_recursion<Rational>(F, 1, slash, RecursionCase::TwoTorsion, 5, X, Y, T);
    CHECK(X.coeff(0) == 0);
    CHECK(Y.coeff(0) == 0);
    CHECK(X.coeff(1) == 0);
    CHECK(weierstrass_residual(F, X, Y).is_zero());
    CHECK(differential_residual(F, 1, slash, X, Y).is_zero());
    Point P0 = Point::affine(X.coeff(0), Y.coeff(0));
    CHECK(on_curve(F, P0));
    CHECK(multiply(F, P0, 2).infinity);
    QSeries Xc, Yc;
    compose_expansion<Rational>(F, 1, slash, false, Rational(0), Rational(0), Xc, Yc, T);
    CHECK(Xc == X);
    CHECK(Yc == Y);

    // The regular recursion refuses a 2-torsion constant point.
    QSeries X1 = QSeries::constant(Rational(0), 1), Y1 = QSeries::constant(Rational(0), 1);
    CHECK_THROWS_AS(run_recursion<Rational>(F, 1, slash, RecursionCase::Regular, 2, X1, Y1, T), Error);
}

TEST_CASE("lambda = -1 and the negation endomorphism")
{
    const auto& P = param("26b1");
    const EllipticCurve& E = P.curve();
    for (size_t c = 0; c < P.group().cusps().size(); ++c) {
        auto a = P.expand(static_cast<long>(c), 30, 1);
        auto b = P.expand(static_cast<long>(c), 30, -1);
        // lambda^2 wp(lambda z) and lambda^3 wp'(lambda z) are unchanged for lambda = -1.
        CHECK(a.X == b.X);
        CHECK(a.Y == b.Y);
        // Composing with -eps gives the negated point: X unchanged, Y -> -Y - a1 X - a3.
        const CuspData& D = P.cusp_data(static_cast<long>(c));
        Point Pn = D.pole ? D.point : negate(E, D.point);
        QSeries Xm, Ym, Xn, Yn;
        compose_expansion<Rational>(E, E.manin, a.slash * Rational(-1), D.pole, Pn.x, Pn.y, Xm, Ym, 30);
        negate_pair(E, a.X, a.Y, Xn, Yn);
        CHECK(Xm == Xn);
        CHECK(Ym == Yn);
    }
    CHECK_THROWS_AS(P.expand(0, 10, 2), Error);
}

TEST_CASE("act_coset substitutes roots of unity along a cusp orbit")
{
    const auto& P = param("11a1");
    const Gamma0& G = P.group();
    const long c = G.al_cusp(11);
    auto e = P.expand(c, 30);
    const CuspInfo& cu = G.cusps()[c];
    auto s0 = act_coset(G, e, cu.gamma);
    CHECK(s0.offset == 0);
    CHECK(to_rational(s0.X) == e.X);

    // Elementary symmetric functions over the orbit are rational: check the sum and the product.
    CSeries sum = CSeries::zero(30, Cyclotomic(CyclotomicField::get(cu.width)), cu.width);
    CSeries prod = CSeries::constant(Cyclotomic(CyclotomicField::get(cu.width), Rational(1)), 30, cu.width);
    for (long k = 0; k < cu.width; ++k) {
        Mat2 g = Mat2{1, 0, 11, 1} * cu.gamma * translation(k);
        auto s = act_coset(G, e, g);
        CHECK(s.offset == k);
        sum = sum + s.X;
        prod = prod * s.X;
    }
    QSeries rs = to_rational(sum), rp = to_rational(prod);
    CHECK(rs.coeff(0) == 11 * e.X.coeff(0));
    for (long n = 1; n < 30; ++n) {
        if (n % 11 == 0)
            CHECK(rs.coeff(n) == 11 * e.X.coeff(n));
        else
            CHECK(rs.coeff(n) == 0);
    }
    CHECK(rp.coeff(0) == pow(e.X.coeff(0), 11));
    CHECK_THROWS_AS(act_coset(G, e, Mat2{1, 0, 0, 1}), Error);
}

TEST_CASE("non-optimal curves: periods outside the lattice are detected")
{
    const auto& P = param("15a3");
    CHECK_FALSE(P.periods_in_lattice());
    CHECK(P.expand(0, 12).X.coeff(11) == -6);
    CHECK_THROWS_AS(P.cusp_data(1), Error);
    CHECK(param("15a4").periods_in_lattice());
    CHECK(param("11a1").periods_in_lattice());
}
