#pragma once

#include "modparam/error.hpp"
#include "modparam/scalar.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

namespace modparam {

// Ring adaptors used by LaurentSeries. Each ring element carries its own context
// (cyclotomic field, residue modulus), so "zero like x" is always available.
inline Rational ring_zero(const Rational&) { return 0; }
inline Rational ring_one(const Rational&) { return 1; }
inline bool ring_is_zero(const Rational& x) { return x == 0; }
inline bool ring_is_unit(const Rational& x) { return x != 0; }
inline Rational ring_inverse(const Rational& x)
{
    require(x != 0, Errc::NonUnitLeadingCoefficient, "leading coefficient is zero");
    return Rational(1) / x;
}
inline Rational ring_from(const Rational&, const Rational& r) { return r; }
inline std::string ring_to_string(const Rational& x) { return to_string(x); }

inline Cyclotomic ring_zero(const Cyclotomic& p) { return Cyclotomic(p.field()); }
inline Cyclotomic ring_one(const Cyclotomic& p) { return Cyclotomic(p.field(), Rational(1)); }
inline bool ring_is_zero(const Cyclotomic& x) { return x.is_zero(); }
inline bool ring_is_unit(const Cyclotomic& x) { return !x.is_zero(); }
inline Cyclotomic ring_inverse(const Cyclotomic& x) { return x.inverse(); }
inline Cyclotomic ring_from(const Cyclotomic& p, const Rational& r) { return Cyclotomic(p.field(), r); }
inline std::string ring_to_string(const Cyclotomic& x) { return x.to_string(); }

inline Residue ring_zero(const Residue& p) { return Residue(p.modulus(), 0); }
inline Residue ring_one(const Residue& p) { return Residue(p.modulus(), 1); }
inline bool ring_is_zero(const Residue& x) { return x.is_zero(); }
inline bool ring_is_unit(const Residue& x) { return x.is_unit(); }
inline Residue ring_inverse(const Residue& x) { return x.inverse(); }
inline Residue ring_from(const Residue& p, const Rational& r) { return Residue(p.modulus(), r); }
inline std::string ring_to_string(const Residue& x) { return x.to_string(); }

inline Scalar ring_zero(const Scalar& p) { return p.zero_like(); }
inline Scalar ring_one(const Scalar& p) { return p.one_like(); }
inline bool ring_is_zero(const Scalar& x) { return x.is_zero(); }
inline bool ring_is_unit(const Scalar& x) { return x.is_unit(); }
inline Scalar ring_inverse(const Scalar& x) { return x.inverse(); }
inline Scalar ring_from(const Scalar& p, const Rational& r) { return p.zero_like() + Scalar(r); }
inline std::string ring_to_string(const Scalar& x) { return x.to_string(); }

namespace detail {
// Cauchy product of two rational coefficient blocks through a common denominator.
std::vector<Rational> rational_convolution(const std::vector<Rational>& a, const std::vector<Rational>& b, size_t len);
}

// Truncated Laurent series sum_{n >= v} a_n q_w^n + O(q_w^T), q_w = exp(2 pi i z / w).
// Stored densely from the valuation; identically zero to order T is represented
// with an empty coefficient block and valuation T.
template <class R>
class LaurentSeries {
public:
    LaurentSeries() : w_(1), start_(0), prec_(0), proto_(R()) {}

    LaurentSeries(long width, long start, std::vector<R> coeffs, long prec, R proto = R())
        : w_(width), start_(start), prec_(prec), c_(std::move(coeffs)), proto_(ring_zero(proto))
    {
        require(width >= 1, Errc::InvalidArgument, "series width must be positive");
        if (!c_.empty())
            proto_ = ring_zero(c_.front());
        if (static_cast<long>(c_.size()) > prec_ - start_)
            c_.resize(std::max<long>(0, prec_ - start_), proto_);
        normalize();
    }

    static LaurentSeries zero(long prec, R proto = R(), long width = 1)
    {
        return LaurentSeries(width, prec, {}, prec, proto);
    }

    static LaurentSeries constant(const R& c, long prec, long width = 1)
    {
        return LaurentSeries(width, 0, {c}, prec, c);
    }

    static LaurentSeries monomial(const R& c, long n, long prec, long width = 1)
    {
        return LaurentSeries(width, n, {c}, prec, c);
    }

    long width() const { return w_; }
    long prec() const { return prec_; }
    // First nonzero exponent; equals prec() for a series that is zero to its order.
    long valuation() const { return start_; }
    bool is_zero() const { return c_.empty(); }
    const R& proto() const { return proto_; }
    const std::vector<R>& block() const { return c_; }

    R coeff(long n) const
    {
        require(n < prec_, Errc::InsufficientPrecision,
                "coefficient " + std::to_string(n) + " beyond truncation order " + std::to_string(prec_));
        if (n < start_ || n - start_ >= static_cast<long>(c_.size()))
            return proto_;
        return c_[n - start_];
    }

    R leading() const
    {
        require(!c_.empty(), Errc::NonUnitLeadingCoefficient, "series is zero to its truncation order");
        return c_.front();
    }

    void set_coeff(long n, const R& v)
    {
        require(n < prec_, Errc::InvalidArgument, "set_coeff beyond truncation order");
        if (c_.empty()) {
            if (ring_is_zero(v))
                return;
            start_ = n;
            c_.push_back(v);
            return;
        }
        if (n < start_) {
            c_.insert(c_.begin(), start_ - n, proto_);
            start_ = n;
        }
        if (n - start_ >= static_cast<long>(c_.size()))
            c_.resize(n - start_ + 1, proto_);
        c_[n - start_] = v;
        normalize();
    }

    LaurentSeries truncate(long T) const
    {
        if (T >= prec_)
            return *this;
        std::vector<R> c(c_.begin(), c_.begin() + std::clamp<long>(T - start_, 0, c_.size()));
        return LaurentSeries(w_, std::min(start_, T), std::move(c), T, proto_);
    }

    // Express in q_L with L a multiple of w: q_w = q_L^(L/w).
    LaurentSeries rescale(long L) const
    {
        require(L % w_ == 0, Errc::InvalidArgument, "rescale width must be a multiple of the current width");
        long k = L / w_;
        if (k == 1)
            return *this;
        std::vector<R> c;
        if (!c_.empty()) {
            c.assign((c_.size() - 1) * k + 1, proto_);
            for (size_t i = 0; i < c_.size(); ++i)
                c[i * k] = c_[i];
        }
        // Exponents off the multiples of k are exactly zero, so the order scales by k.
        return LaurentSeries(L, start_ * k, std::move(c), prec_ * k, proto_);
    }

    LaurentSeries operator-() const
    {
        LaurentSeries r = *this;
        for (auto& x : r.c_)
            x = -x;
        return r;
    }

    LaurentSeries& operator+=(const LaurentSeries& o) { return add_impl(o, false); }
    LaurentSeries& operator-=(const LaurentSeries& o) { return add_impl(o, true); }

    LaurentSeries& operator*=(const R& s)
    {
        if (ring_is_zero(s)) {
            c_.clear();
            start_ = prec_;
            return *this;
        }
        for (auto& x : c_)
            x *= s;
        normalize();
        return *this;
    }

    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
    friend LaurentSeries operator*(LaurentSeries a, const R& s) { return a *= s; }

    friend LaurentSeries operator*(const LaurentSeries& a0, const LaurentSeries& b0)
    {
        LaurentSeries a = a0, b = b0;
        unify_width(a, b);
        long va = a.start_, vb = b.start_;
        long T = std::min(a.prec_ + vb, b.prec_ + va);
        long v = va + vb;
        if (a.c_.empty() || b.c_.empty() || T <= v)
            return zero(T, a.proto_, a.w_);
        size_t len = static_cast<size_t>(std::min<long>(T - v, static_cast<long>(a.c_.size() + b.c_.size()) - 1));
        std::vector<R> c;
        if constexpr (std::is_same_v<R, Rational>) {
            c = detail::rational_convolution(a.c_, b.c_, len);
        } else {
            c.assign(len, a.proto_);
            for (size_t i = 0; i < a.c_.size() && i < len; ++i) {
                if (ring_is_zero(a.c_[i]))
                    continue;
                size_t lim = std::min(b.c_.size(), len - i);
                for (size_t j = 0; j < lim; ++j)
                    c[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return LaurentSeries(a.w_, v, std::move(c), T, a.proto_);
    }

    LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

    LaurentSeries inverse() const
    {
        require(!c_.empty(), Errc::NonUnitLeadingCoefficient, "inverse of a series that is zero to its order");
        require(ring_is_unit(c_.front()), Errc::NonUnitLeadingCoefficient,
                "leading coefficient " + ring_to_string(c_.front()) + " is not a unit");
        long v = start_;
        long L = prec_ - v;
        R inv0 = ring_inverse(c_.front());
        if (c_.size() == 1)
            return LaurentSeries(w_, -v, {inv0}, -v + L, proto_);
        std::vector<R> d(L, proto_);
        d[0] = inv0;
        for (long n = 1; n < L; ++n) {
            R s = proto_;
            long lim = std::min<long>(n, static_cast<long>(c_.size()) - 1);
            for (long k = 1; k <= lim; ++k)
                if (!ring_is_zero(c_[k]))
                    s += c_[k] * d[n - k];
            d[n] = -(s * inv0);
        }
        return LaurentSeries(w_, -v, std::move(d), -v + L, proto_);
    }

    friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) { return a * b.inverse(); }

    LaurentSeries pow(long e) const
    {
        if (e < 0)
            return inverse().pow(-e);
        if (e == 0)
            return constant(ring_one(proto_), relative_prec(), w_);
        LaurentSeries r, b = *this;
        bool have = false;
        while (e) {
            if (e & 1) {
                r = have ? r * b : b;
                have = true;
            }
            e >>= 1;
            if (e)
                b = b * b;
        }
        return r;
    }

    // q d/dq
    LaurentSeries q_derivative() const
    {
        LaurentSeries r = *this;
        for (size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] *= ring_from(proto_, Rational(start_ + static_cast<long>(i)));
        r.normalize();
        return r;
    }

    // Multiply by q^k.
    LaurentSeries shift(long k) const
    {
        LaurentSeries r = *this;
        r.start_ += k;
        r.prec_ += k;
        return r;
    }

    long relative_prec() const { return prec_ - start_; }

    template <class F>
    auto map(F f) const -> LaurentSeries<decltype(f(std::declval<R>()))>
    {
        using S = decltype(f(std::declval<R>()));
        std::vector<S> c;
        c.reserve(c_.size());
        for (auto& x : c_)
            c.push_back(f(x));
        S p = f(proto_);
        return LaurentSeries<S>(w_, start_, std::move(c), prec_, p);
    }

    // Coefficients of exponents n*step, re-indexed as n: the part of the series
    // invariant under q -> zeta_step q (the width becomes w/step).
    LaurentSeries filter(long step) const
    {
        require(step >= 1 && w_ % step == 0, Errc::InvalidArgument, "filter step must divide the width");
        std::vector<R> c;
        auto cdiv = [](long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); };
        long lo = cdiv(start_, step);
        long hi = cdiv(prec_, step); // exponents n*step < prec
        long end = c_.empty() ? lo : std::min(hi, cdiv(start_ + static_cast<long>(c_.size()), step));
        for (long n = lo; n < end; ++n)
            c.push_back(coeff(n * step));
        return LaurentSeries(w_ / step, lo, std::move(c), hi, proto_);
    }

    std::string to_string(const std::string& var = "q", long max_terms = 12) const
    {
        std::string s;
        long shown = 0;
        for (size_t i = 0; i < c_.size() && shown < max_terms; ++i) {
            if (ring_is_zero(c_[i]))
                continue;
            if (!s.empty())
                s += " + ";
            s += ring_to_string(c_[i]);
            long e = start_ + static_cast<long>(i);
            if (e != 0)
                s += "*" + var + (w_ == 1 ? "" : "_" + std::to_string(w_)) + "^" + std::to_string(e);
            ++shown;
        }
        if (s.empty())
            s = "0";
        return s + " + O(" + var + "^" + std::to_string(prec_) + ")";
    }

    // Exact equality of known coefficients up to min order.
    bool agrees_with(const LaurentSeries& o, long upto) const
    {
        for (long n = std::min(valuation(), o.valuation()); n < upto; ++n)
            if (!(coeff(n) == o.coeff(n)))
                return false;
        return true;
    }

    // Same width, same truncation order and same coefficients.
    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b)
    {
        return a.w_ == b.w_ && a.prec_ == b.prec_ && a.agrees_with(b, a.prec_);
    }
    friend bool operator!=(const LaurentSeries& a, const LaurentSeries& b) { return !(a == b); }

    friend void unify_width(LaurentSeries& a, LaurentSeries& b)
    {
        if (a.w_ == b.w_)
            return;
        long L = lcm_long(a.w_, b.w_);
        a = a.rescale(L);
        b = b.rescale(L);
    }

private:
    long w_;
    long start_;
    long prec_;
    std::vector<R> c_;
    R proto_;

    void normalize()
    {
        size_t k = 0;
        while (k < c_.size() && ring_is_zero(c_[k]))
            ++k;
        if (k == c_.size()) {
            c_.clear();
            start_ = prec_;
            return;
        }
        if (k) {
            c_.erase(c_.begin(), c_.begin() + k);
            start_ += static_cast<long>(k);
        }
        while (!c_.empty() && ring_is_zero(c_.back()))
            c_.pop_back();
    }

    LaurentSeries& add_impl(const LaurentSeries& o0, bool sub)
    {
        LaurentSeries o = o0;
        unify_width(*this, o);
        long T = std::min(prec_, o.prec_);
        long lo = T, hi = std::numeric_limits<long>::min();
        for (const LaurentSeries* s : {this, &o})
            if (!s->c_.empty()) {
                lo = std::min(lo, s->start_);
                hi = std::max(hi, std::min(T, s->start_ + static_cast<long>(s->c_.size())));
            }
        if (lo >= T) {
            c_.clear();
            prec_ = T;
            start_ = T;
            return *this;
        }
        std::vector<R> c(std::max(0L, hi - lo), proto_);
        for (size_t i = 0; i < c_.size(); ++i) {
            long n = start_ + static_cast<long>(i);
            if (n < T)
                c[n - lo] = c_[i];
        }
        for (size_t i = 0; i < o.c_.size(); ++i) {
            long n = o.start_ + static_cast<long>(i);
            if (n < T) {
                if (sub)
                    c[n - lo] -= o.c_[i];
                else
                    c[n - lo] += o.c_[i];
            }
        }
        start_ = lo;
        prec_ = T;
        c_ = std::move(c);
        normalize();
        return *this;
    }
};

using QSeries = LaurentSeries<Rational>;
using CSeries = LaurentSeries<Cyclotomic>;
using RSeries = LaurentSeries<Residue>;
using SSeries = LaurentSeries<Scalar>;

// Logarithm and exponential of rational power series (characteristic 0).
// log requires constant term 1 and valuation 0; exp requires valuation >= 1.
QSeries series_log(const QSeries& g);
QSeries series_exp(const QSeries& h);

// Reduction modulo m; ord is valuation() of the result (prec() if zero to order).
RSeries reduce_mod(const QSeries& s, std::uint64_t m);

// q_w -> zeta_w^k q_w; coefficients land in Q(zeta_w).
CSeries substitute_root_of_unity(const QSeries& s, long k);
CSeries substitute_root_of_unity(const CSeries& s, long k);
CSeries to_cyclotomic(const QSeries& s, long w);
QSeries to_rational(const CSeries& s);

SSeries to_scalar(const QSeries& s);
QSeries scalar_to_rational(const SSeries& s);

}
