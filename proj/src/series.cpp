#include "modparam/series.hpp"

namespace modparam {

namespace detail {

std::vector<Rational> rational_convolution(const std::vector<Rational>& a, const std::vector<Rational>& b, size_t len)
{
    Integer da = 1, db = 1;
    for (auto& x : a)
        mpz_lcm(da.get_mpz_t(), da.get_mpz_t(), x.get_den_mpz_t());
    for (auto& x : b)
        mpz_lcm(db.get_mpz_t(), db.get_mpz_t(), x.get_den_mpz_t());
    size_t na = std::min(a.size(), len), nb = std::min(b.size(), len);
    std::vector<Integer> A(na), B(nb);
    for (size_t i = 0; i < na; ++i)
        A[i] = a[i].get_num() * (da / a[i].get_den());
    for (size_t i = 0; i < nb; ++i)
        B[i] = b[i].get_num() * (db / b[i].get_den());
    std::vector<Integer> C(len, 0);
    for (size_t i = 0; i < na; ++i) {
        if (A[i] == 0)
            continue;
        size_t lim = std::min(nb, len - i);
        mpz_srcptr ai = A[i].get_mpz_t();
        for (size_t j = 0; j < lim; ++j)
            mpz_addmul(C[i + j].get_mpz_t(), ai, B[j].get_mpz_t());
    }
    Integer d = da * db;
    std::vector<Rational> out(len);
    for (size_t k = 0; k < len; ++k) {
        out[k] = Rational(C[k], d);
        out[k].canonicalize();
    }
    return out;
}

}

QSeries series_log(const QSeries& g)
{
    require(g.valuation() == 0 && g.coeff(0) == 1, Errc::InvalidArgument, "log needs constant term 1");
    long T = g.prec();
    QSeries ratio = g.q_derivative() / g;
    std::vector<Rational> c(T, Rational(0));
    for (long n = 1; n < T; ++n)
        c[n] = ratio.coeff(n) / n;
    return QSeries(g.width(), 0, std::move(c), T);
}

QSeries series_exp(const QSeries& h)
{
    require(h.valuation() >= 1, Errc::InvalidArgument, "exp needs a series without constant term");
    long T = h.prec();
    std::vector<Rational> kh(T, Rational(0));
    for (long k = 1; k < T; ++k)
        kh[k] = h.coeff(k) * k;
    std::vector<Rational> E(T, Rational(0));
    E[0] = 1;
    for (long n = 1; n < T; ++n) {
        Rational s = 0;
        for (long k = 1; k <= n; ++k)
            if (kh[k] != 0)
                s += kh[k] * E[n - k];
        E[n] = s / n;
    }
    return QSeries(h.width(), 0, std::move(E), T);
}

RSeries reduce_mod(const QSeries& s, std::uint64_t m)
{
    Residue proto(m, 0);
    return s.map([m](const Rational& x) { return Residue(m, x); });
}

CSeries substitute_root_of_unity(const CSeries& s, long k)
{
    long w = s.width();
    auto K = CyclotomicField::get(w);
    std::vector<Cyclotomic> c;
    for (long n = s.valuation(); n < s.prec(); ++n) {
        Cyclotomic x = s.coeff(n);
        if (x.width() != w)
            x = x.lift(K);
        c.push_back(x * Cyclotomic::zeta_power(K, k * n));
    }
    return CSeries(w, s.valuation(), std::move(c), s.prec(), Cyclotomic(K));
}

CSeries to_cyclotomic(const QSeries& s, long w)
{
    auto K = CyclotomicField::get(w);
    auto r = s.map([&K](const Rational& x) { return Cyclotomic(K, x); });
    if (r.is_zero())
        return CSeries::zero(s.prec(), Cyclotomic(K), s.width());
    return r;
}

CSeries substitute_root_of_unity(const QSeries& s, long k)
{
    return substitute_root_of_unity(to_cyclotomic(s, s.width()), k);
}

QSeries to_rational(const CSeries& s)
{
    return s.map([](const Cyclotomic& x) { return x.rational_value(); });
}

SSeries to_scalar(const QSeries& s)
{
    return s.map([](const Rational& x) { return Scalar(x); });
}

QSeries scalar_to_rational(const SSeries& s)
{
    return s.map([](const Scalar& x) { return x.to_rational(); });
}

}
