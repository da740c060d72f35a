#include "modparam/cyclotomic.hpp"

#include "modparam/error.hpp"
#include "modparam/real.hpp"

#include <map>
#include <mutex>

namespace modparam {

namespace {

std::vector<Integer> ipoly_div_exact(const std::vector<Integer>& a, const std::vector<Integer>& b)
{
    std::vector<Integer> r = a;
    std::vector<Integer> q(a.size() - b.size() + 1, 0);
    for (size_t k = r.size(); k-- > b.size() - 1;) {
        Integer c = r[k] / b.back();
        size_t shift = k - (b.size() - 1);
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i)
            r[shift + i] -= c * b[i];
    }
    return q;
}

}

std::vector<Integer> cyclotomic_polynomial(long w)
{
    // x^w - 1 divided by Phi_d for all proper divisors d.
    std::vector<Integer> p(w + 1, 0);
    p[0] = -1;
    p[w] = 1;
    for (long d : divisors(w))
        if (d < w)
            p = ipoly_div_exact(p, cyclotomic_polynomial(d));
    return p;
}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(long w)
{
    static std::mutex mu;
    static std::map<long, std::shared_ptr<const CyclotomicField>> cache;
    require(w >= 1, Errc::InvalidArgument, "cyclotomic width must be positive");
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(w);
    if (it != cache.end())
        return it->second;
    auto K = std::make_shared<CyclotomicField>();
    K->w = w;
    K->phi = cyclotomic_polynomial(w);
    K->degree = static_cast<long>(K->phi.size()) - 1;
    cache[w] = K;
    return K;
}

Cyclotomic::Cyclotomic(FieldPtr K) : K_(std::move(K)), c_(K_->degree, Rational(0)) {}

Cyclotomic::Cyclotomic(FieldPtr K, const Rational& r) : Cyclotomic(std::move(K)) { c_[0] = r; }

Cyclotomic::Cyclotomic(FieldPtr K, std::vector<Rational> coords) : K_(std::move(K)), c_(std::move(coords))
{
    c_.resize(std::max<size_t>(c_.size(), K_->degree), Rational(0));
    reduce_poly(c_);
}

void Cyclotomic::reduce_poly(std::vector<Rational>& p)
{
    const long d = K_->degree;
    const auto& phi = K_->phi;
    for (long k = static_cast<long>(p.size()) - 1; k >= d; --k) {
        if (p[k] == 0)
            continue;
        Rational c = p[k];
        p[k] = 0;
        for (long i = 0; i < d; ++i)
            if (phi[i] != 0)
                p[k - d + i] -= c * phi[i];
    }
    p.resize(d, Rational(0));
}

Cyclotomic Cyclotomic::zeta_power(FieldPtr K, long k)
{
    long e = mod_long(k, K->w);
    std::vector<Rational> p(e + 1, Rational(0));
    p[e] = 1;
    return Cyclotomic(std::move(K), std::move(p));
}

bool Cyclotomic::is_zero() const
{
    for (auto& x : c_)
        if (x != 0)
            return false;
    return true;
}

bool Cyclotomic::is_rational() const
{
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0)
            return false;
    return true;
}

Rational Cyclotomic::rational_value() const
{
    require(is_rational(), Errc::GaloisResidue, "cyclotomic value " + to_string() + " is not rational");
    return c_[0];
}

void Cyclotomic::check_same(const Cyclotomic& o) const
{
    require(K_->w == o.K_->w, Errc::InvalidArgument, "mixed cyclotomic fields");
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o)
{
    check_same(o);
    for (size_t i = 0; i < c_.size(); ++i)
        c_[i] += o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o)
{
    check_same(o);
    for (size_t i = 0; i < c_.size(); ++i)
        c_[i] -= o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o)
{
    check_same(o);
    long d = K_->degree;
    std::vector<Rational> p(2 * d - 1, Rational(0));
    for (long i = 0; i < d; ++i) {
        if (c_[i] == 0)
            continue;
        for (long j = 0; j < d; ++j)
            if (o.c_[j] != 0)
                p[i + j] += c_[i] * o.c_[j];
    }
    reduce_poly(p);
    c_ = std::move(p);
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r)
{
    for (auto& x : c_)
        x *= r;
    return *this;
}

Cyclotomic Cyclotomic::operator-() const
{
    Cyclotomic r = *this;
    for (auto& x : r.c_)
        x = -x;
    return r;
}

Cyclotomic Cyclotomic::inverse() const
{
    require(!is_zero(), Errc::NonUnitLeadingCoefficient, "inverse of zero in Q(zeta)");
    // Extended Euclid of c(x) against Phi_w(x) over Q.
    QPoly a = c_;
    poly_trim(a);
    QPoly m(K_->phi.begin(), K_->phi.end());
    QPoly s0{Rational(1)}, s1{};
    QPoly r0 = a, r1 = m;
    while (!r1.empty()) {
        QPoly q, r;
        poly_divmod(r0, r1, q, r);
        QPoly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    require(r0.size() == 1, Errc::InvalidArgument, "non-invertible cyclotomic element");
    Rational g = r0[0];
    for (auto& x : s0)
        x /= g;
    return Cyclotomic(K_, s0);
}

Cyclotomic Cyclotomic::galois(long t) const
{
    require(gcd_long(t, K_->w) == 1, Errc::InvalidArgument, "Galois exponent not coprime to width");
    Cyclotomic r(K_);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0)
            continue;
        Cyclotomic z = zeta_power(K_, static_cast<long>(i) * t);
        z *= c_[i];
        r += z;
    }
    return r;
}

Rational Cyclotomic::trace() const
{
    Cyclotomic acc(K_);
    for (long t = 1; t <= K_->w; ++t)
        if (gcd_long(t, K_->w) == 1)
            acc += galois(t);
    return acc.rational_value();
}

Complex Cyclotomic::to_complex(long bits) const
{
    Complex z = Complex::exp_2pi_i(frac(1, K_->w), bits);
    Complex acc(bits);
    Complex p = Complex::one(bits);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] != 0)
            acc += p * Real(c_[i], bits);
        p *= z;
    }
    return acc;
}

Cyclotomic Cyclotomic::lift(FieldPtr L) const
{
    require(L->w % K_->w == 0, Errc::InvalidArgument, "lift target width must be a multiple");
    long step = L->w / K_->w;
    Cyclotomic r(L);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0)
            continue;
        Cyclotomic z = zeta_power(L, static_cast<long>(i) * step);
        z *= c_[i];
        r += z;
    }
    return r;
}

std::string Cyclotomic::to_string() const
{
    std::string s = "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i)
            s += ",";
        s += modparam::to_string(c_[i]);
    }
    return s + "]";
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b)
{
    return a.K_->w == b.K_->w && a.c_ == b.c_;
}

}
