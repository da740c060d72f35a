#include "modparam/param.hpp"

#include "modparam/error.hpp"

#include <cmath>

namespace modparam {

const char* recursion_case_name(RecursionCase c)
{
    switch (c) {
    case RecursionCase::Pole: return "pole";
    case RecursionCase::Regular: return "regular";
    case RecursionCase::TwoTorsion: return "two-torsion";
    case RecursionCase::Composition: return "composition";
    }
    return "";
}

namespace {

template <class R>
struct CurveConsts {
    R a1, a2, a3, a4, a6, b2_12, g2, g3;
    CurveConsts(const EllipticCurve& E, const R& proto)
        : a1(ring_from(proto, E.a1)), a2(ring_from(proto, E.a2)), a3(ring_from(proto, E.a3)),
          a4(ring_from(proto, E.a4)), a6(ring_from(proto, E.a6)), b2_12(ring_from(proto, E.b2 / 12)),
          g2(ring_from(proto, E.g2())), g3(ring_from(proto, E.g3()))
    {
    }
};

Rational scale(const Rational& x, const Rational& r) { return x * r; }
Cyclotomic scale(const Cyclotomic& x, const Rational& r) { return x * Cyclotomic(x.field(), r); }

// U = w sum_{n >= 1} (c_n / n) q_w^n to order P.
template <class R>
LaurentSeries<R> eps_tail(const LaurentSeries<R>& slash, long P)
{
    long w = slash.width();
    std::vector<R> c;
    for (long n = 1; n < P; ++n)
        c.push_back(scale(slash.coeff(n), frac(w, n)));
    return LaurentSeries<R>(w, 1, c, P, slash.proto());
}

}

template <class R>
void compose_expansion(const EllipticCurve& E, long manin, const LaurentSeries<R>& slash, bool pole, const R& x0,
                       const R& y0, LaurentSeries<R>& X, LaurentSeries<R>& Y, long T)
{
    const R zero = ring_zero(slash.proto());
    const long w = slash.width();
    CurveConsts<R> K(E, zero);
    const Rational m(manin);
    // valuation of U
    long v = 1;
    while (v < slash.prec() && ring_is_zero(slash.coeff(v)))
        ++v;
    require(v < slash.prec(), Errc::ExpansionUndefined, "slash expansion vanishes to its precision");
    LaurentSeries<R> wp, dwp;
    if (pole) {
        long P = T + 3 * v + 1;
        LaurentSeries<R> U = eps_tail(slash, P);
        long Kmax = (T + 2 * v) / (2 * v) + 2;
        WpLaurent W = wp_laurent(E.g2(), E.g3(), std::max(2L, Kmax));
        LaurentSeries<R> V = U * U;
        LaurentSeries<R> H = LaurentSeries<R>::constant(ring_from(zero, W.c[W.K()]), P, w);
        LaurentSeries<R> Hd = LaurentSeries<R>::constant(ring_from(zero, W.c[W.K()] * (2 * W.K() - 2)), P, w);
        for (long k = W.K() - 1; k >= 2; --k) {
            H = H * V + LaurentSeries<R>::constant(ring_from(zero, W.c[k]), P, w);
            Hd = Hd * V + LaurentSeries<R>::constant(ring_from(zero, W.c[k] * (2 * k - 2)), P, w);
        }
        LaurentSeries<R> Ui = U.inverse();
        LaurentSeries<R> Vi = Ui * Ui;
        wp = Vi + V * H;
        dwp = Vi * Ui * ring_from(zero, Rational(-2)) + U * Hd;
    } else {
        long J = T / v + 2;
        std::vector<R> p(J + 2, zero);
        p[0] = (x0 + K.b2_12) * ring_from(zero, 1 / (m * m));
        p[1] = (y0 + y0 + K.a1 * x0 + K.a3) * ring_from(zero, 1 / (m * m * m));
        for (long j = 0; j + 2 <= J + 1; ++j) {
            R s = zero;
            Integer binom = 1;
            for (long i = 0; i <= j; ++i) {
                s += scale(p[i] * p[j - i], Rational(binom));
                binom = binom * (j - i) / (i + 1);
            }
            p[j + 2] = scale(s, Rational(6));
            if (j == 0)
                p[2] -= K.g2 * ring_from(zero, frac(1, 2));
        }
        long P = T + v + 1;
        LaurentSeries<R> U = eps_tail(slash, P);
        Integer fact = 1;
        std::vector<Rational> inv_fact(J + 1);
        for (long j = 0; j <= J; ++j) {
            if (j > 0)
                fact *= j;
            inv_fact[j] = Rational(1) / Rational(fact);
        }
        wp = LaurentSeries<R>::constant(scale(p[J], inv_fact[J]), P, w);
        dwp = LaurentSeries<R>::constant(scale(p[J + 1], inv_fact[J]), P, w);
        for (long j = J - 1; j >= 0; --j) {
            wp = wp * U + LaurentSeries<R>::constant(scale(p[j], inv_fact[j]), P, w);
            dwp = dwp * U + LaurentSeries<R>::constant(scale(p[j + 1], inv_fact[j]), P, w);
        }
    }
    R m2 = ring_from(zero, m * m), m3 = ring_from(zero, m * m * m);
    X = (wp * m2 - LaurentSeries<R>::constant(K.b2_12, wp.prec(), w)).truncate(T);
    LaurentSeries<R> t = dwp * m3 - X * K.a1 - LaurentSeries<R>::constant(K.a3, T, w);
    Y = (t * ring_from(zero, frac(1, 2))).truncate(T);
}

namespace {

template <class R>
class Recursion {
public:
    Recursion(const EllipticCurve& E, long manin, const LaurentSeries<R>& slash, RecursionCase kind, long T)
        : K_(E, ring_zero(slash.proto())), zero_(ring_zero(slash.proto())), w_(slash.width()), kind_(kind), T_(T)
    {
        vB_ = kind == RecursionCase::Pole ? -2 : 0;
        vD_ = kind == RecursionCase::Pole ? -3 : 0;
        B_.assign(T + kOff + 2, zero_);
        D_.assign(T + kOff + 2, zero_);
        cf_.assign(T + 5, zero_);
        R inv_m = ring_from(zero_, frac(1, manin));
        for (long n = 1; n < static_cast<long>(cf_.size()); ++n)
            cf_[n] = slash.coeff(n) * inv_m;
    }

    R& b(long n) { return B_[n + kOff]; }
    R& d(long n) { return D_[n + kOff]; }

    void seed(const LaurentSeries<R>& X, const LaurentSeries<R>& Y, long nb, long nd)
    {
        for (long n = vB_; n < vB_ + nb; ++n)
            b(n) = X.coeff(n);
        for (long n = vD_; n < vD_ + nd; ++n)
            d(n) = Y.coeff(n);
        known_b_ = vB_ + nb - 1;
        extend_cache();
    }

    void run()
    {
        switch (kind_) {
        case RecursionCase::Pole:
            for (long n = known_b_ + 1; n <= T_; ++n) {
                R B2 = b(-2), D3 = d(-3);
                R c1 = cf_[1];
                R r1 = diff_rhs(n);
                R r2 = -residual(n - 4);
                R m11 = ring_from(zero_, frac(n, w_)), m12 = scale(c1, Rational(-2));
                R m21 = scale(B2 * B2, Rational(-3)), m22 = scale(D3, Rational(2));
                solve(n, m11, m12, m21, m22, r1, r2);
            }
            break;
        case RecursionCase::TwoTorsion:
            for (long n = known_b_ + 1; n <= T_; ++n) {
                R B0 = b(0), D0 = d(0), D1 = d(1);
                R Fx = scale(B0 * B0, Rational(3)) + scale(K_.a2 * B0, Rational(2)) + K_.a4 - K_.a1 * D0;
                R r1 = diff_rhs(n);
                R r2 = -residual(n);
                R m11 = ring_from(zero_, frac(n, w_)), m12 = scale(cf_[1], Rational(-2));
                R m21 = -Fx, m22 = scale(D1, Rational(2));
                solve(n, m11, m12, m21, m22, r1, r2);
            }
            break;
        case RecursionCase::Regular: {
            R Fy = scale(d(0), Rational(2)) + K_.a1 * b(0) + K_.a3;
            require(!ring_is_zero(Fy), Errc::RecursionSingular, "constant point is 2-torsion");
            R Fyi = ring_inverse(Fy);
            for (long n = 1; n < T_; ++n) {
                b(n) = scale(diff_rhs(n), frac(w_, n));
                known_b_ = n;
                extend_cache();
                d(n) = -residual(n) * Fyi;
            }
            break;
        }
        case RecursionCase::Composition:
            fail(Errc::InvalidArgument, "composition case has no recursion");
        }
    }

    void result(LaurentSeries<R>& X, LaurentSeries<R>& Y)
    {
        std::vector<R> xb, yd;
        for (long n = vB_; n < T_; ++n)
            xb.push_back(b(n));
        for (long n = vD_; n < T_; ++n)
            yd.push_back(d(n));
        X = LaurentSeries<R>(w_, vB_, xb, T_, zero_);
        Y = LaurentSeries<R>(w_, vD_, yd, T_, zero_);
    }

private:
    static constexpr long kOff = 4;
    CurveConsts<R> K_;
    R zero_;
    long w_;
    RecursionCase kind_;
    long T_;
    long vB_ = 0, vD_ = 0;
    long known_b_ = -3;
    std::vector<R> B_, D_, cf_;
    std::vector<R> xx_; // xx_[s - 2 vB] = sum b(i) b(s - i), final entries only

    R xx(long s)
    {
        long idx = s - 2 * vB_;
        if (idx < 0)
            return zero_;
        if (idx < static_cast<long>(xx_.size()))
            return xx_[idx];
        R t = zero_;
        for (long i = vB_; i <= s - vB_; ++i)
            if (i + kOff < static_cast<long>(B_.size()) && s - i + kOff < static_cast<long>(B_.size()))
                t += b(i) * b(s - i);
        return t;
    }

    void extend_cache()
    {
        // xx(s) is final once every b(i) with i <= s - vB is known.
        while (static_cast<long>(xx_.size()) + 2 * vB_ - vB_ <= known_b_) {
            long s = static_cast<long>(xx_.size()) + 2 * vB_;
            R t = zero_;
            for (long i = vB_; i <= s - vB_; ++i)
                t += b(i) * b(s - i);
            xx_.push_back(t);
        }
    }

    // Coefficient of q^t in Y^2 + a1 XY + a3 Y - X^3 - a2 X^2 - a4 X - a6 with unknown entries zero.
    R residual(long t)
    {
        R yy = zero_, xy = zero_, xxx = zero_;
        for (long k = vD_; k <= t - vD_; ++k)
            if (k + kOff < static_cast<long>(D_.size()) && t - k + kOff < static_cast<long>(D_.size()))
                yy += d(k) * d(t - k);
        for (long k = vB_; k <= t - vD_; ++k)
            if (k + kOff < static_cast<long>(B_.size()) && t - k + kOff < static_cast<long>(D_.size()))
                xy += b(k) * d(t - k);
        for (long i = vB_; i <= t - 2 * vB_; ++i)
            if (i + kOff < static_cast<long>(B_.size()))
                xxx += b(i) * xx(t - i);
        R r = yy + K_.a1 * xy - xxx - K_.a2 * xx(t);
        if (t >= vD_)
            r += K_.a3 * d(t);
        if (t >= vB_)
            r -= K_.a4 * b(t);
        if (t == 0)
            r -= K_.a6;
        return r;
    }

    // Right side of (n/w) b_n = sum_k cf_{n-k} (2 d_k + a1 b_k) + a3 cf_n, unknowns zero.
    R diff_rhs(long n)
    {
        R s = K_.a3 * cf_[n];
        for (long k = vD_; k <= n - 1; ++k) {
            const R& c = cf_[n - k];
            if (ring_is_zero(c))
                continue;
            R t = scale(d(k), Rational(2));
            if (k >= vB_)
                t += K_.a1 * b(k);
            s += c * t;
        }
        return s;
    }

    void solve(long n, const R& m11, const R& m12, const R& m21, const R& m22, const R& r1, const R& r2)
    {
        R det = m11 * m22 - m12 * m21;
        require(!ring_is_zero(det), Errc::RecursionSingular,
                "determinant vanishes at index " + std::to_string(n) + " (" + recursion_case_name(kind_) + ")");
        R di = ring_inverse(det);
        R bn = (r1 * m22 - m12 * r2) * di;
        R dn = (m11 * r2 - m21 * r1) * di;
        if (n + kOff < static_cast<long>(B_.size()))
            b(n) = bn;
        d(n - 1) = dn;
        known_b_ = n;
        extend_cache();
    }
};

}

template <class R>
void run_recursion(const EllipticCurve& E, long manin, const LaurentSeries<R>& slash, RecursionCase kind, long seeds,
                   LaurentSeries<R>& X, LaurentSeries<R>& Y, long T)
{
    require(slash.prec() >= T + 4, Errc::InsufficientPrecision, "slash expansion too short for the recursion");
    Recursion<R> rec(E, manin, slash, kind, T);
    switch (kind) {
    case RecursionCase::Pole: rec.seed(X, Y, seeds, seeds); break;
    case RecursionCase::Regular: rec.seed(X, Y, 1, 1); break;
    case RecursionCase::TwoTorsion: rec.seed(X, Y, 3, 2); break;
    case RecursionCase::Composition: fail(Errc::InvalidArgument, "composition case has no recursion");
    }
    rec.run();
    rec.result(X, Y);
}

template <class R>
LaurentSeries<R> weierstrass_residual(const EllipticCurve& E, const LaurentSeries<R>& X, const LaurentSeries<R>& Y)
{
    CurveConsts<R> K(E, ring_zero(X.proto()));
    long T = std::min(X.prec(), Y.prec());
    long w = X.width();
    auto C = [&](const R& c) { return LaurentSeries<R>::constant(c, T, w); };
    return Y * Y + X * Y * K.a1 + Y * K.a3 - X * X * X - X * X * K.a2 - X * K.a4 - C(K.a6);
}

template <class R>
LaurentSeries<R> differential_residual(const EllipticCurve& E, long manin, const LaurentSeries<R>& slash,
                                       const LaurentSeries<R>& X, const LaurentSeries<R>& Y)
{
    CurveConsts<R> K(E, ring_zero(X.proto()));
    long w = X.width();
    LaurentSeries<R> t = Y * ring_from(K.a1, Rational(2)) + X * K.a1 + LaurentSeries<R>::constant(K.a3, Y.prec(), w);
    return X.q_derivative() - t * slash * ring_from(K.a1, frac(w, manin));
}

template <class R>
void negate_pair(const EllipticCurve& E, const LaurentSeries<R>& X, const LaurentSeries<R>& Y, LaurentSeries<R>& Xn,
                 LaurentSeries<R>& Yn)
{
    CurveConsts<R> K(E, ring_zero(X.proto()));
    Xn = X;
    Yn = -Y - X * K.a1 - LaurentSeries<R>::constant(K.a3, Y.prec(), Y.width());
}

template void compose_expansion<Rational>(const EllipticCurve&, long, const QSeries&, bool, const Rational&,
                                          const Rational&, QSeries&, QSeries&, long);
template void compose_expansion<Cyclotomic>(const EllipticCurve&, long, const CSeries&, bool, const Cyclotomic&,
                                            const Cyclotomic&, CSeries&, CSeries&, long);
template void run_recursion<Rational>(const EllipticCurve&, long, const QSeries&, RecursionCase, long, QSeries&,
                                      QSeries&, long);
template void run_recursion<Cyclotomic>(const EllipticCurve&, long, const CSeries&, RecursionCase, long, CSeries&,
                                        CSeries&, long);
template QSeries weierstrass_residual<Rational>(const EllipticCurve&, const QSeries&, const QSeries&);
template CSeries weierstrass_residual<Cyclotomic>(const EllipticCurve&, const CSeries&, const CSeries&);
template QSeries differential_residual<Rational>(const EllipticCurve&, long, const QSeries&, const QSeries&,
                                                 const QSeries&);
template CSeries differential_residual<Cyclotomic>(const EllipticCurve&, long, const CSeries&, const CSeries&,
                                                   const CSeries&);
template void negate_pair<Rational>(const EllipticCurve&, const QSeries&, const QSeries&, QSeries&, QSeries&);
template void negate_pair<Cyclotomic>(const EllipticCurve&, const CSeries&, const CSeries&, CSeries&, CSeries&);

}
