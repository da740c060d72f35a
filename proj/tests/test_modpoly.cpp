#include "doctest.h"

#include "modparam/modpoly.hpp"
#include "modparam/records.hpp"

#include <map>
#include <memory>
#include <random>

using namespace modparam;

namespace {

const Parametrization& param(const char* label)
{
    static std::map<std::string, std::unique_ptr<Parametrization>> cache;
    auto& p = cache[label];
    if (!p)
        p = std::make_unique<Parametrization>(find_curve(label).curve(), 256);
    return *p;
}

QPoly poly(std::initializer_list<long> c)
{
    QPoly p;
    for (long x : c)
        p.push_back(Rational(x));
    return p;
}

Complex lift(const Rational& r, long bits) { return Complex(Real(r, bits)); }

double dist(const Complex& a, const Complex& b) { return (a - b).abs().to_double(); }

Integer binomial(long n, long k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}

TEST_CASE("j-function values and expansion")
{
    QSeries j = j_series(4);
    CHECK(j.valuation() == -1);
    CHECK(j.coeff(-1) == 1);
    CHECK(j.coeff(0) == 744);
    CHECK(j.coeff(1) == 196884);
    CHECK(j.coeff(2) == 21493760);
    CHECK(j.coeff(3) == 864299970);

    long bits = 128;
    CHECK(dist(j_invariant(Complex::i(bits), bits), lift(1728, bits)) < 1e-25);
    Complex rho(Real(Rational(1, 2), bits), sqrt(Real(3L, bits)) / Real(2L, bits));
    CHECK(dist(j_invariant(rho, bits), lift(0, bits)) < 1e-25);
    Complex s2(Real(bits), sqrt(Real(2L, bits)));
    CHECK(dist(j_invariant(s2, bits), lift(8000, bits)) < 1e-22);
    Complex s7(Real(Rational(1, 2), bits), sqrt(Real(7L, bits)) / Real(2L, bits));
    CHECK(dist(j_invariant(s7, bits), lift(-3375, bits)) < 1e-22);
}

TEST_CASE("j_recognize round trip")
{
    std::vector<JRational> cases;
    cases.push_back({poly({0, 1}), poly({1})});
    cases.push_back({poly({-37627200, 54688, -1}), poly({-54000, 1})});
    cases.push_back({poly({7}), poly({1728, 1})});
    cases.push_back({poly({3, 0, 2, 1}), poly({-287496, 0, 1})});
    cases.push_back({{Rational(1, 3), Rational(-5, 7)}, poly({32768, 1})});
    for (auto& r : cases) {
        long d = std::max<long>(r.num.size(), r.den.size()) - 1;
        QSeries s = r.expand(2 * d + 4);
        JRational back = j_recognize(s, d + 1);
        INFO(r.to_string());
        CHECK(back == r);
        QSeries again = back.expand(2 * d + 4);
        for (long n = s.valuation(); n < 2 * d + 4; ++n)
            CHECK(again.coeff(n) == s.coeff(n));
    }
    QSeries s = cases[3].expand(3);
    CHECK_THROWS_AS(j_recognize(s, 3), Error);
}

TEST_CASE("exact factorization over Q")
{
    QPoly p = poly_mul(poly_mul(poly({-2, 1}), poly_mul(poly({1, 0, 1}), poly({1, 0, 1}))), poly({32768, 1}));
    auto f = factor_over_q(p);
    std::map<std::string, long> got;
    for (auto& x : f)
        got[poly_to_string(x.f, "x")] = x.multiplicity;
    CHECK(got.size() == 3);
    CHECK(got[poly_to_string(poly({-2, 1}), "x")] == 1);
    CHECK(got[poly_to_string(poly({1, 0, 1}), "x")] == 2);
    CHECK(got[poly_to_string(poly({32768, 1}), "x")] == 1);

    QPoly cubic = poly({-2, 0, 0, 1});
    auto g = factor_over_q(poly_mul(cubic, poly({3, 1})));
    CHECK(g.size() == 2);
    for (auto& x : g)
        if (x.f.size() == 4)
            CHECK_FALSE(x.irreducible);
}

TEST_CASE("expression parsing and evaluation")
{
    Expr e = Expr::parse("(Y+2)/(X-1) - 3*x^2 + y^-1");
    Rational X(5), Y(7);
    Rational v = e.eval<Rational>(X, Y, [](const Rational& c) { return c; });
    CHECK(v == Rational(9, 4) - 75 + Rational(1, 7));
    CHECK_THROWS_AS(Expr::parse("X + * Y"), Error);
    CHECK(Expr::parse(e.to_string()).eval<Rational>(X, Y, [](const Rational& c) { return c; }) == v);
}

TEST_CASE("Gamma0 equivalence of quadratic points")
{
    QuadPoint z = QuadPoint::from_form(52, 14, 1);
    CHECK(z.discriminant() == -12);
    CHECK(z.to_string() == "(-7 + sqrt(-3))/52");
    std::mt19937 rng(7);
    for (long N : {11L, 26L}) {
        for (int t = 0; t < 20; ++t) {
            long c = N * (static_cast<long>(rng() % 7) - 3);
            long d = 1 + static_cast<long>(rng() % 40);
            if (std::gcd(c, d) != 1)
                continue;
            long a = 0, b = 0;
            for (a = -200; a <= 200; ++a)
                if ((a * d - 1) % c == 0 && c != 0) {
                    b = (a * d - 1) / c;
                    break;
                }
            if (c == 0) {
                a = 1;
                d = 1;
                b = static_cast<long>(rng() % 9);
            }
            Mat2 g{a, b, c, d};
            REQUIRE(g.in_gamma0(N));
            QuadPoint w = z.transform(g);
            Mat2 h;
            CHECK(gamma0_equivalent(z, w, N, &h));
            CHECK(h.in_gamma0(N));
            CHECK(z.transform(h) == w);
        }
    }
    // S moves the point off its Gamma0(26) orbit
    CHECK_FALSE(gamma0_equivalent(z, z.transform(Mat2{0, -1, 1, 0}), 26));
    CHECK(gamma0_equivalent(z, z.transform(Mat2{0, -1, 1, 0}), 1));
}

TEST_CASE("modular polynomial of a constant")
{
    const Parametrization& P = param("11a1");
    ModularFunction F = build_modular_function(P, Expr::constant(Rational(3)), 1, 6);
    auto A = modular_polynomial(F);
    REQUIRE(A.size() == 13);
    for (long i = 0; i <= 12; ++i) {
        Rational expect = Rational(binomial(12, i)) * Rational(((12 - i) % 2) ? -1 : 1);
        for (long k = 0; k < 12 - i; ++k)
            expect *= 3;
        INFO("A_" << i);
        CHECK(A[i].coeff(0) == expect);
        CHECK(A[i].valuation() >= 0);
    }
}

TEST_CASE("power sums: Newton's identities against direct summation")
{
    struct Case {
        const char* label;
        const char* expr;
        long n_max;
    };
    for (Case c : {Case{"11a1", "X", 12}, Case{"11a1", "1/(X-5)", 12}, Case{"14a1", "Y", 14}, Case{"26b1", "(Y+2)/(X-1)", 6}}) {
        std::string name = std::string(c.label) + " " + c.expr;
        INFO(name);
        const Parametrization& P = param(c.label);
        ModularFunction F = build_modular_function(P, Expr::parse(c.expr), 1, c.n_max);
        long r = 4;
        auto A = modular_polynomial(F);
        auto viaA = power_sums_from_coefficients(A, r);
        auto direct = power_sums_direct(F, r);
        for (long k = 1; k <= r; ++k) {
            long T = std::min(viaA[k].prec(), direct[k].prec());
            long v = std::min(viaA[k].valuation(), direct[k].valuation());
            CHECK(T > v + 2);
            for (long n = v; n < T; ++n)
                CHECK(viaA[k].coeff(n) == direct[k].coeff(n));
        }
    }
}

TEST_CASE("divisors have degree zero")
{
    struct Case {
        const char* label;
        const char* expr;
    };
    for (Case c : {Case{"11a1", "1/(X-5)"}, Case{"11a1", "X"}, Case{"14a1", "X"}, Case{"11a1", "(Y-5)/(X-5)"},
                   Case{"26b1", "(Y+2)/(X-1)"}}) {
        std::string name = std::string(c.label) + " " + c.expr;
        INFO(name);
        const Parametrization& P = param(c.label);
        ModularFunction F = build_modular_function(P, Expr::parse(c.expr), 1, 10);
        Divisor D = divisor_of(F);
        CHECK(D.degree() == 0);
    }
}

TEST_CASE("divisor of 1/(X-5) on 11a1")
{
    const Parametrization& P = param("11a1");
    Divisor D = divisor_of(build_modular_function(P, Expr::parse("1/(X-5)"), 1, 10));
    CHECK(D.pole_polynomial() == poly_mul(poly({24729001, 1}), poly({32768, 1})));
    CHECK(D.pole_count() == 2);
    for (auto& c : D.cusps)
        if (c.label == "oo")
            CHECK(c.order == 2);
}

TEST_CASE("trace of (Y+2)/(X-1) on 26b1")
{
    const Parametrization& P = param("26b1");
    auto r = recognize_coefficients(P, Expr::parse("(Y+2)/(X-1)"), {41});
    JRational trace{poly({-37627200, 54688, -1}), poly({-54000, 1})};
    JRational neg = trace;
    for (auto& c : neg.num)
        c = -c;
    CHECK(r[0] == neg);
}

TEST_CASE("Atkin-Lehner action")
{
    SUBCASE("points")
    {
        const Parametrization& P = param("11a1");
        Point A = Point::affine(5, -6), B = Point::affine(5, 5), C = Point::affine(16, 60);
        CHECK(atkin_lehner_point(P, 11, A) == C);
        CHECK(atkin_lehner_point(P, 11, C) == A);
        CHECK(atkin_lehner_point(P, 11, B) == B);

        const Parametrization& Q = param("26b1");
        CHECK(atkin_lehner_point(Q, 2, Point::affine(1, -2)) == Point::affine(3, 2));
        CHECK(atkin_lehner_point(Q, 13, Point::affine(1, -2)) == Point::affine(1, -2));
    }
    SUBCASE("numeric identity phi(W_Q z)")
    {
        long bits = 160;
        for (auto [label, Qs] : {std::pair<const char*, std::vector<long>>{"11a1", {11}}, {"26b1", {2, 13, 26}}}) {
            const Parametrization& P = param(label);
            Expr F = Expr::parse("(Y+2)/(X-1)");
            for (long Q : Qs) {
                Expr G = atkin_lehner_expr(P, Q, F);
                Mat2 W = P.group().atkin_lehner(Q);
                Complex z(Real(Rational(1, 7), bits), Real(Rational(3, 10), bits));
                Complex zw = W.apply(z);
                Complex X1(bits), Y1(bits), X2(bits), Y2(bits);
                P.phi(zw, bits, X1, Y1);
                P.phi(z, bits, X2, Y2);
                auto lf = [bits](const Rational& c) { return lift(c, bits); };
                Complex lhs = F.eval<Complex>(X1, Y1, lf), rhs = G.eval<Complex>(X2, Y2, lf);
                INFO(label << " W_" << Q);
                CHECK(dist(lhs, rhs) < 1e-30 * (1 + lhs.abs().to_double()));
            }
        }
    }
    SUBCASE("involution on recognized coefficients")
    {
        const Parametrization& P = param("26b1");
        Expr F = Expr::parse("Y/(X-1)");
        Expr FF = atkin_lehner_expr(P, 2, atkin_lehner_expr(P, 2, F));
        auto a = recognize_coefficients(P, F, {41});
        auto b = recognize_coefficients(P, FF, {41});
        CHECK(a[0] == b[0]);
        auto c = recognize_coefficients(P, atkin_lehner_expr(P, 2, F), {40});
        CHECK(c[0].den == poly({-1728, 1}));
    }
}

TEST_CASE("points at fractions of the real period of 11a1")
{
    const Parametrization& P = param("11a1");
    const EllipticCurve& E = P.curve();
    const PeriodLattice& L = P.lattice();
    long bits = P.bits();
    std::vector<Point> expected{Point::affine(5, -6), Point::affine(5, 5), Point::affine(16, 60)};
    for (long k = 2; k <= 4; ++k) {
        Complex z = L.w1 * Real(Rational(k, 5), bits);
        Complex p(bits), dp(bits);
        wp_both(L, z, p, dp);
        Complex X = p - lift(E.b2 / 12, bits);
        Complex Y = (dp - lift(E.a1, bits) * X - lift(E.a3, bits)) * Real(Rational(1, 2), bits);
        INFO("k = " << k);
        CHECK(dist(X, lift(expected[k - 2].x, bits)) < 1e-40);
        CHECK(dist(Y, lift(expected[k - 2].y, bits)) < 1e-40);
    }
}

TEST_CASE("CM preimages and the discriminant criterion")
{
    const Parametrization& P = param("26b1");
    auto pre = preimage_search(P, poly({-54000, 1}), PreimageTarget{Point::affine(1, 0)});
    REQUIRE(!pre.empty());
    CHECK(pre[0].z == QuadPoint::from_form(52, 14, 1));
    for (auto& r : pre) {
        CHECK(dist(r.X, lift(1, 2 * 256)) < 1e-60);
        CHECK(dist(r.Y, lift(0, 2 * 256)) < 1e-60);
    }

    auto g = preimage_search(P, poly({-1728, 1}), PreimageTarget{Point::affine(3, 2)});
    REQUIRE(g.size() == 2);
    QuadPoint z1 = g[0].z;
    CHECK(z1 == QuadPoint::from_form(13, -10, 2));
    CHECK(atkin_lehner_fixes(26, 13, z1));
    CHECK_FALSE(atkin_lehner_fixes_point(26, 13, z1));
    CHECK(gamma0_equivalent(z1.transform(P.group().atkin_lehner(13)), g[1].z, 26));
    CHECK_FALSE(atkin_lehner_fixes(26, 2, z1));
    CMVerdict v = cm_criterion(z1, 13, true);
    CHECK(v.D == -4);
    CHECK(v.witness == 10);
    CMVerdict moved = cm_criterion(z1, 2, false);
    CHECK(moved.witness == -1);

    CMVerdict v0 = cm_criterion(QuadPoint::from_form(104, -20, 1), 13, true);
    CHECK(v0.D == -16);
    CHECK(v0.witness == 6);
    CHECK_THROWS_AS(cm_criterion(QuadPoint::from_form(1, 1, 15), 2, true), Error);

    CHECK_THROWS_AS(preimage_search(param("11a1"), poly({24729001, 1}), PreimageTarget{Point::affine(5, 5)}), Error);
}

TEST_CASE("modular degree by divisor and by area")
{
    for (auto [label, deg] : {std::pair<const char*, long>{"11a1", 1}, {"14a1", 1}, {"14a2", 2}, {"26b1", 2}}) {
        INFO(label);
        const Parametrization& P = param(label);
        CHECK(modular_degree_divisor(P) == deg);
        CHECK(std::abs(modular_degree_area(P) - static_cast<double>(deg)) < 1e-6);
        CHECK(modular_degree(P) == deg);
    }
}
