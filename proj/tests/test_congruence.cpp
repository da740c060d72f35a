#include "doctest.h"

#include "modparam/congruence.hpp"
#include "modparam/records.hpp"

#include <algorithm>
#include <map>

using namespace modparam;

namespace {

const EllipticCurve& curve(const char* label)
{
    static std::map<std::string, EllipticCurve> cache;
    auto it = cache.find(label);
    if (it == cache.end())
        it = cache.emplace(label, find_curve(label).curve()).first;
    return it->second;
}

QSeries x_series(const EllipticCurve& E, long T)
{
    return expand_infinity(E, newform_coefficients(E, T + 8), T).X;
}

QPoly poly(std::initializer_list<Rational> c) { return QPoly(c); }

}

TEST_CASE("division polynomials against the group law")
{
    // x(nP) = x - f_{n-1} f_{n+1} F^[n odd] / (f_n^2 F^[n even]) with F = 4x^3 + b2 x^2 + 2 b4 x + b6
    const EllipticCurve& E = curve("37a1");
    Point P = Point::affine(Rational(0), Rational(0));
    REQUIRE(on_curve(E, P));
    QPoly F = poly({E.b6, 2 * E.b4, E.b2, Rational(4)});
    Rational x = P.x, Fx = poly_eval(F, x);
    for (long n = 2; n <= 9; ++n) {
        Rational fm = poly_eval(division_polynomial(E, n - 1), x);
        Rational f0 = poly_eval(division_polynomial(E, n), x);
        Rational fp = poly_eval(division_polynomial(E, n + 1), x);
        Rational num = fm * fp * (n % 2 ? Fx : Rational(1));
        Rational den = f0 * f0 * (n % 2 ? Rational(1) : Fx);
        Point Q = multiply(E, P, n);
        CAPTURE(n);
        CHECK(Q.x == x - num / den);
    }
    for (long n = 1; n <= 8; ++n) {
        long deg = n % 2 ? (n * n - 1) / 2 : (n * n - 4) / 2;
        CHECK(static_cast<long>(division_polynomial(E, n).size()) - 1 == deg);
    }
}

TEST_CASE("torsion x-coordinates are roots of the torsion polynomial")
{
    for (const char* label : {"11a1", "14a1", "14a2", "15a3", "15a4", "26b1"}) {
        const EllipticCurve& E = curve(label);
        long seen = 0;
        for (const Point& P : small_integral_points(E, 200)) {
            long n = torsion_order(E, P, 16);
            if (n < 2)
                continue;
            ++seen;
            CAPTURE(label);
            CHECK(poly_eval(torsion_polynomial(E, n), P.x) == 0);
            for (long d = 2; d < n; ++d)
                if (n % d)
                    CHECK(poly_eval(torsion_polynomial(E, d), P.x) != 0);
        }
        CHECK(seen > 0);
    }
    QPoly f5 = torsion_polynomial(curve("11a1"), 5);
    CHECK(poly_eval(f5, Rational(5)) == 0);
    CHECK(poly_eval(f5, Rational(16)) == 0);
}

TEST_CASE("congruence constant")
{
    PeriodLattice L3 = period_lattice(curve("15a3"), 256), L4 = period_lattice(curve("15a4"), 256);
    CHECK(L3.g2_exact / 20 == Rational(241, 240));
    CHECK(L4.g2_exact / 20 == Rational(-1679, 240));
    CHECK(congruence_constant(L3, L4) == 8);
    CHECK_THROWS_AS(congruence_constant(L3, L3), Error);
    PeriodLattice L1 = period_lattice(curve("14a1"), 256), L2 = period_lattice(curve("14a2"), 256);
    CHECK(congruence_constant(L1, L2) == -8);
}

TEST_CASE("difference form 14a1 / 14a2")
{
    DifferenceForm F = difference_rational_form(curve("14a1"), curve("14a2"));
    CHECK(F.e3_source == "E1");
    CHECK(F.C == -8);
    CHECK(F.numerator == poly({Rational(1)}));
    CHECK(F.denominator == poly({Rational(-1), Rational(1)}));
    CHECK(F.additive == 0);
    CHECK(F.D == 1);
    CHECK(F.torsion_integral);
    CHECK(F.to_string("X1") == "8/(1 - X1)");
    // 8/(1 - X1) as a series against X1 - X2
    const long T = 40;
    QSeries X1 = x_series(curve("14a1"), T), X2 = x_series(curve("14a2"), T);
    QSeries rhs = (QSeries::constant(Rational(1), T) - X1).inverse() * Rational(8);
    QSeries d = X1 - X2 - rhs;
    for (long n = -2; n < d.prec(); ++n)
        CHECK(d.coeff(n) == 0);
}

TEST_CASE("difference form 15a3 / 15a4")
{
    DifferenceForm F = difference_rational_form(curve("15a3"), curve("15a4"));
    CHECK(F.C == 8);
    CHECK(F.numerator == poly_mul(poly({Rational(-3, 4), Rational(1)}), poly({Rational(-3, 2), Rational(1)})));
    CHECK(F.denominator == poly({Rational(0), Rational(0), Rational(-1), Rational(1)}));
    CHECK(F.D == 8);
    CHECK(F.modulus() == 1);
    CHECK(F.torsion_integral);
    REQUIRE(F.zeros.size() == 2);
    std::vector<Rational> roots;
    for (auto& z : F.zeros) {
        REQUIRE(z.f.size() == 2);
        roots.push_back(-z.f[0]);
    }
    std::sort(roots.begin(), roots.end());
    CHECK(roots == std::vector<Rational>{Rational(3, 4), Rational(3, 2)});
    std::vector<Integer> Ds = F.D_factors;
    std::sort(Ds.begin(), Ds.end());
    CHECK(Ds == std::vector<Integer>{Integer(2), Integer(4)});
    // the poles 0 and 1 are x-coordinates of 4-torsion on E3
    QPoly t4 = torsion_polynomial(F.E3, 4);
    CHECK(poly_eval(t4, Rational(0)) == 0);
    CHECK(poly_eval(t4, Rational(1)) == 0);

    // re-expansion identity through the verified order
    const long T = F.verified_order;
    QSeries X3 = x_series(F.E3, T);
    QSeries num = QSeries::constant(Rational(0), T), den = num;
    for (size_t i = F.numerator.size(); i-- > 0;)
        num = num * X3 + QSeries::constant(F.numerator[i], T);
    for (size_t i = F.denominator.size(); i-- > 0;)
        den = den * X3 + QSeries::constant(F.denominator[i], T);
    QSeries lhs = x_series(curve("15a3"), T) - x_series(curve("15a4"), T);
    QSeries d = (lhs - QSeries::constant(F.additive, T)) * den - num * F.C;
    for (long n = d.valuation(); n < d.prec(); ++n)
        CHECK(d.coeff(n) == 0);
}

TEST_CASE("non-isogenous and identical curves")
{
    CHECK_THROWS_AS(difference_rational_form(curve("96a3"), curve("48a5")), Error);
    CHECK_THROWS_AS(difference_rational_form(curve("14a1"), curve("14a1")), Error);
}

TEST_CASE("difference form conclusion on every bundled isogenous pair")
{
    std::vector<EllipticCurve> all;
    for (auto& rec : bundled_curves())
        all.push_back(rec.curve());
    long pairs = 0;
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = 0; j < all.size(); ++j) {
            if (i == j || all[i].conductor != all[j].conductor || all[i].conductor >= 50)
                continue;
            DifferenceForm F = difference_rational_form(all[i], all[j]);
            ++pairs;
            if (!F.torsion_integral)
                continue;
            Rational m = abs(F.modulus());
            if (m <= 1 || !is_integer(m))
                continue;
            QSeries d = x_series(all[i], 200) - x_series(all[j], 200);
            CAPTURE(all[i].label);
            CAPTURE(all[j].label);
            CHECK(congruent_up_to_constant(d, QSeries::constant(Rational(0), 200), m.get_num()));
        }
    CHECK(pairs == 4);
}

TEST_CASE("sturm check")
{
    QSeries zero = QSeries::constant(Rational(0), 20);
    SturmResult r = sturm_check(zero, Integer(5), 0, 24, -12);
    CHECK(r.proved);
    CHECK(r.threshold == 12);
    CHECK(!r.has_nonzero);

    CHECK(sturm_check(zero, Integer(5), 0, 24, -20).enough_precision == false);
    CHECK(sturm_check(zero, Integer(5), 12, 12, 0).threshold == 12);
    CHECK(sturm_check(zero, Integer(5), 2, 7, 0).threshold == 1);

    QSeries d = x_series(curve("15a3"), 20) - x_series(curve("15a4"), 20);
    d = d - QSeries::constant(d.coeff(0), d.prec());
    SturmResult s = sturm_check(d, Integer(2), 0, 24, -8);
    CHECK(!s.proved);
    CHECK(s.has_nonzero);
    CHECK(s.first_nonzero <= 11);
}

TEST_CASE("parametrization congruence 14a1 / 14a2")
{
    CongruenceVerdict v = parametrization_congruence(curve("14a1"), curve("14a2"), Integer(8));
    CHECK(v.decision == CongruenceDecision::Proved);
    CHECK(v.d1 == 1);
    CHECK(v.d2 == 2);
    CHECK(v.threshold == 6);
    CHECK(v.constant_congruent);
    CHECK(v.soundness_checked);
    CHECK(v.soundness_ok);
    REQUIRE(v.prime_powers.size() == 1);
    CHECK(v.prime_powers[0] == std::pair<long, long>{2, 3});

    CongruenceVerdict w = parametrization_congruence(curve("14a1"), curve("14a2"), Integer(16));
    CHECK(w.decision == CongruenceDecision::Refuted);
    CHECK(w.gcd_bound == 8);
}

TEST_CASE("parametrization congruence 15a3 / 15a4 refuted")
{
    CongruenceVerdict v = parametrization_congruence(curve("15a3"), curve("15a4"), Integer(2));
    CHECK(v.decision == CongruenceDecision::Refuted);
    REQUIRE(v.witnesses.size() >= 2);
    CHECK(v.witnesses.front().n == 2);
    CHECK(v.witnesses.front().coefficient == 8);
    CHECK(v.witnesses.back().gcd == 1);
    CHECK(v.gcd_bound == 1);

    QSeries X3 = x_series(curve("15a3"), 16), X4 = x_series(curve("15a4"), 16);
    CHECK(X3.coeff(11) == -6);
    CHECK(X4.coeff(11) == 7);
    Rational a = X3.coeff(2) - X4.coeff(2), b = X3.coeff(11) - X4.coeff(11);
    CHECK(a == 8);
    CHECK(b == -13);
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
    CHECK(g == 1);
}

TEST_CASE("parametrization congruence 96a3 / 48a5")
{
    CongruenceVerdict v = parametrization_congruence(curve("96a3"), curve("48a5"), Integer(4), 0, 'X', 8L, 8L);
    CHECK(v.decision == CongruenceDecision::Proved);
    CHECK(v.threshold == 32);
    CHECK(v.soundness_ok);
    CongruenceVerdict w = parametrization_congruence(curve("96a3"), curve("48a5"), Integer(16), 0, 'X', 8L, 8L);
    CHECK(w.decision == CongruenceDecision::Refuted);
    CongruenceVerdict y = parametrization_congruence(curve("96a3"), curve("48a5"), Integer(4), 0, 'Y', 8L, 8L);
    CHECK(y.decision == CongruenceDecision::Proved);
    CHECK(y.threshold == 48);
    REQUIRE(!y.witnesses.empty());
    CHECK(y.witnesses.front().n == 1);
    CHECK(y.witnesses.front().coefficient == -68);
}

namespace {

struct Row {
    const char* expr;
    std::vector<long> coeffs; // q^-6 .. q^3
};

void check_table(const char* label, const std::vector<Row>& rows)
{
    auto basis = reduced_basis(curve(label), 6, 10);
    REQUIRE(basis.size() == rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        CAPTURE(label);
        CAPTURE(i);
        CHECK(basis[i].expression() == rows[i].expr);
        for (long n = -6; n <= 3; ++n)
            CHECK(basis[i].series.coeff(n) == rows[i].coeffs[n + 6]);
        for (long n = basis[i].series.valuation(); n < basis[i].series.prec(); ++n)
            CHECK(is_integer(basis[i].series.coeff(n)));
    }
}

}

TEST_CASE("reduced basis tables")
{
    check_table("14a1", {
                            {"1", {0, 0, 0, 0, 0, 0, 1, 0, 0, 0}},
                            {"X - 2", {0, 0, 0, 0, 1, 1, 0, 2, 2, 3}},
                            {"-Y - 2*X - 2", {0, 0, 0, 1, 0, 2, 0, 5, 4, 2}},
                            {"X^2 + 2*Y - X + 2", {0, 0, 1, 0, 0, -1, 0, -2, 8, 5}},
                            {"-X*Y - 3*X^2 + 2*Y + 3*X - 2", {0, 1, 0, 0, 0, 0, 0, -2, -4, 18}},
                            {"X^3 + 3*X*Y - 5*Y + 2*X - 6", {1, 0, 0, 0, 0, -2, 0, 4, -7, -6}},
                        });
    check_table("14a2", {
                            {"1", {0, 0, 0, 0, 0, 0, 1, 0, 0, 0}},
                            {"X - 2", {0, 0, 0, 0, 1, 1, 0, 2, 10, -5}},
                            {"-Y - 2*X - 2", {0, 0, 0, 1, 0, 2, 0, -3, -4, 2}},
                            {"X^2 + 2*Y - X - 14", {0, 0, 1, 0, 0, -1, 0, 14, 0, 29}},
                            {"-X*Y - 3*X^2 + 2*Y + 3*X + 38", {0, 1, 0, 0, 0, 0, 0, 6, -28, -14}},
                            {"X^3 + 3*X*Y - 5*Y - 22*X - 6", {1, 0, 0, 0, 0, -2, 0, -12, 25, 138}},
                        });
}

TEST_CASE("reduced basis differences are constant mod 8")
{
    auto b1 = reduced_basis(curve("14a1"), 10, 60);
    auto b2 = reduced_basis(curve("14a2"), 10, 60);
    REQUIRE(b1.size() == b2.size());
    for (size_t i = 0; i < b1.size(); ++i) {
        CAPTURE(i);
        CHECK(b1[i].order == b2[i].order);
        CHECK(congruent_up_to_constant(b1[i].series, b2[i].series, Integer(8)));
    }
    CHECK(!congruent_up_to_constant(b1[1].series, b2[1].series, Integer(16)));
}
