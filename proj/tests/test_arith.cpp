#include "doctest.h"

#include "modparam/real.hpp"
#include "modparam/series.hpp"

#include <random>

using namespace modparam;

namespace {

QSeries q_series(long start, std::vector<long> c, long prec)
{
    std::vector<Rational> v;
    for (long x : c)
        v.emplace_back(x);
    return QSeries(1, start, v, prec);
}

QSeries random_series(std::mt19937& rng, long start, long prec, bool unit_lead)
{
    std::uniform_int_distribution<long> num(-20, 20), den(1, 6);
    std::vector<Rational> v;
    for (long n = start; n < prec; ++n) {
        Rational r(num(rng), den(rng));
        r.canonicalize();
        v.push_back(r);
    }
    if (unit_lead && v[0] == 0)
        v[0] = 1;
    return QSeries(1, start, v, prec);
}

}

TEST_CASE("series addition cancels the leading term")
{
    auto a = q_series(-2, {1, 0, 0, 1}, 10);
    auto b = q_series(-2, {-1}, 10);
    auto s = a + b;
    CHECK(s.valuation() == 1);
    CHECK(s.coeff(1) == 1);
    CHECK(s.prec() == 10);
}

TEST_CASE("series product valuation and truncation")
{
    auto a = q_series(-2, {1}, 5);
    auto b = q_series(3, {1}, 8);
    auto p = a * b;
    CHECK(p.valuation() == 1);
    CHECK(p.coeff(1) == 1);
    CHECK(p.prec() == std::min(5 + 3, 8 - 2));
}

TEST_CASE("geometric series inverse")
{
    auto one_minus_q = q_series(0, {1, -1}, 20);
    std::vector<long> ones(20, 1);
    auto geo = q_series(0, ones, 20);
    auto p = one_minus_q * geo;
    CHECK(p.valuation() == 0);
    CHECK(p.coeff(0) == 1);
    for (long n = 1; n < p.prec(); ++n)
        CHECK(p.coeff(n) == 0);
    auto inv = q_series(-2, {1, 1}, 10).inverse();
    CHECK(inv.valuation() == 2);
    for (long n = 2; n < inv.prec(); ++n)
        CHECK(inv.coeff(n) == ((n % 2 == 0) ? 1 : -1));
}

TEST_CASE("inverse of a series with zero leading scalar fails")
{
    QSeries z = QSeries::zero(10);
    CHECK_THROWS_AS(z.inverse(), Error);
    RSeries r = reduce_mod(q_series(0, {3, 1}, 5), 3);
    CHECK(r.valuation() == 1);
    RSeries r6 = reduce_mod(q_series(0, {2, 1}, 5), 6);
    CHECK_THROWS_AS(r6.inverse(), Error);
}

TEST_CASE("randomized ring axioms")
{
    std::mt19937 rng(7);
    for (int t = 0; t < 30; ++t) {
        auto a = random_series(rng, -3, 12, true);
        auto b = random_series(rng, -1, 14, true);
        auto c = random_series(rng, 0, 10, true);
        auto s = (a + b) - b;
        CHECK(s.agrees_with(a, s.prec()));
        auto l = (a * b) * c, r = a * (b * c);
        CHECK(l.prec() == r.prec());
        CHECK(l.agrees_with(r, l.prec()));
        auto d1 = a * (b + c), d2 = a * b + a * c;
        long T = std::min(d1.prec(), d2.prec());
        CHECK(d1.agrees_with(d2, T));
    }
}

TEST_CASE("inverse then product is one for random unit-leading series")
{
    std::mt19937 rng(11);
    for (int t = 0; t < 100; ++t) {
        auto a = random_series(rng, -2 + t % 5, 15, true);
        auto p = a * a.inverse();
        CHECK(p.valuation() == 0);
        CHECK(p.coeff(0) == 1);
        for (long n = 1; n < p.prec(); ++n)
            CHECK(p.coeff(n) == 0);
    }
}

TEST_CASE("direct convolution matches series product")
{
    std::mt19937 rng(3);
    auto c = random_series(rng, 1, 30, true);
    auto d = random_series(rng, -3, 30, true);
    auto p = c * d;
    for (long n = p.valuation(); n < p.prec(); ++n) {
        Rational s = 0;
        for (long k = -3; k <= n - 1; ++k)
            s += c.coeff(n - k) * d.coeff(k);
        CHECK(s == p.coeff(n));
    }
}

TEST_CASE("reduction commutes with ring operations")
{
    std::mt19937 rng(5);
    for (int t = 0; t < 20; ++t) {
        auto a = random_series(rng, -2, 12, true);
        auto b = random_series(rng, 0, 12, true);
        for (std::uint64_t m : {7ull, 13ull, 4ull}) {
            bool ok = true;
            try {
                auto ra = reduce_mod(a, m), rb = reduce_mod(b, m);
                auto s1 = reduce_mod(a + b, m), s2 = ra + rb;
                auto p1 = reduce_mod(a * b, m), p2 = ra * rb;
                CHECK(s1.agrees_with(s2, std::min(s1.prec(), s2.prec())));
                CHECK(p1.agrees_with(p2, std::min(p1.prec(), p2.prec())));
            } catch (const Error& e) {
                ok = e.code() == Errc::DenominatorNotCoprime;
            }
            CHECK(ok);
        }
    }
}

TEST_CASE("reduce mod prime")
{
    auto s = q_series(1, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 13}, 20);
    auto r = reduce_mod(s, 13);
    CHECK(r.valuation() == 1);
    CHECK(r.coeff(11).value() == 0);
    QSeries bad(1, 0, {Rational(1, 13)}, 5);
    CHECK_THROWS_AS(reduce_mod(bad, 13), Error);
}

TEST_CASE("mixed widths rescale to the lcm")
{
    QSeries a(2, 1, {Rational(1)}, 6); // q_2 + O(q_2^6)
    QSeries b(3, 1, {Rational(1)}, 6); // q_3 + O(q_3^6)
    auto s = a + b;
    CHECK(s.width() == 6);
    CHECK(s.coeff(3) == 1);
    CHECK(s.coeff(2) == 1);
    CHECK(s.prec() == 12);
}

TEST_CASE("cyclotomic arithmetic")
{
    for (long w : {1L, 2L, 3L, 4L, 5L, 6L, 11L, 12L, 26L}) {
        auto K = CyclotomicField::get(w);
        auto z = Cyclotomic::zeta_power(K, 1);
        Cyclotomic p(K, Rational(1));
        for (long k = 0; k < w; ++k)
            p *= z;
        CHECK(p == Cyclotomic(K, Rational(1)));
        Cyclotomic s(K);
        for (long k = 0; k < w; ++k)
            s += Cyclotomic::zeta_power(K, k);
        CHECK(s.is_rational());
        CHECK(s.rational_value() == (w == 1 ? 1 : 0));
        auto a = z + Cyclotomic(K, Rational(3, 2));
        CHECK((a * a.inverse()) == Cyclotomic(K, Rational(1)));
        CHECK(a.trace() == Rational(3, 2) * K->degree + z.trace());
    }
    auto K = CyclotomicField::get(5);
    CHECK(Cyclotomic::zeta_power(K, 1).trace() == -1);
    auto c = Complex::exp_2pi_i(Rational(1, 5), 128);
    auto d = Cyclotomic::zeta_power(K, 1).to_complex(128);
    CHECK((c - d).abs().to_double() < 1e-30);
}

TEST_CASE("symmetrized expression over embeddings is rational")
{
    auto K = CyclotomicField::get(12);
    QSeries s(12, -2, {Rational(1), Rational(3), Rational(-2), Rational(5), Rational(7)}, 40);
    CSeries total = CSeries::zero(40, Cyclotomic(K), 12);
    for (long k = 0; k < 12; ++k)
        total += substitute_root_of_unity(s, k);
    auto r = to_rational(total);
    for (long n = r.valuation(); n < r.prec(); ++n)
        CHECK(r.coeff(n) == (n % 12 == 0 ? s.coeff(n) * 12 : Rational(0)));
}

TEST_CASE("rational reconstruction")
{
    Real third = Real(1L, 100) / Real(3L, 100);
    CHECK(rational_reconstruct(third, 1000) == Rational(1, 3));
    Real t = Real(54688L, 200) + ldexp(Real(1L, 200), -80);
    CHECK(rational_reconstruct(t, 1000000, ldexp(Real(1L, 200), -70)) == 54688);
    CHECK_THROWS_AS(rational_reconstruct(Real::pi(100), 10), Error);
}

TEST_CASE("series log and exp are inverse")
{
    auto g = q_series(0, {1, 3, -2, 5, 1, 0, 7}, 12);
    auto h = series_log(g);
    auto e = series_exp(h);
    CHECK(e.agrees_with(g, 12));
}
