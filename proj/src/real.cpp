#include "modparam/real.hpp"

#include "modparam/error.hpp"

#include <cmath>
#include <vector>

namespace modparam {

namespace {

mpfr_prec_t clamp_bits(long bits) { return static_cast<mpfr_prec_t>(std::max<long>(bits, MPFR_PREC_MIN)); }

}

Real::Real(long bits)
{
    mpfr_init2(v_, clamp_bits(bits));
    mpfr_set_zero(v_, 1);
}

Real::Real(double x, long bits)
{
    mpfr_init2(v_, clamp_bits(bits));
    mpfr_set_d(v_, x, MPFR_RNDN);
}

Real::Real(long x, long bits)
{
    mpfr_init2(v_, clamp_bits(bits));
    mpfr_set_si(v_, x, MPFR_RNDN);
}

Real::Real(const Integer& x, long bits)
{
    mpfr_init2(v_, clamp_bits(bits));
    mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const Rational& x, long bits)
{
    mpfr_init2(v_, clamp_bits(bits));
    mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& o)
{
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept
{
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o)
{
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept
{
    mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::pi(long bits)
{
    Real r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

Real Real::parse(const std::string& s, long bits)
{
    Real r(bits);
    require(mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) == 0, Errc::ParseError, "bad real '" + s + "'");
    return r;
}

namespace {

void widen(mpfr_t v, mpfr_srcptr o)
{
    if (mpfr_get_prec(o) > mpfr_get_prec(v))
        mpfr_prec_round(v, mpfr_get_prec(o), MPFR_RNDN);
}

}

Real& Real::operator+=(const Real& o)
{
    widen(v_, o.v_);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& o)
{
    widen(v_, o.v_);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& o)
{
    widen(v_, o.v_);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& o)
{
    widen(v_, o.v_);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real Real::operator-() const
{
    Real r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

Integer Real::round() const
{
    Integer z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
}

Integer Real::floor() const
{
    Integer z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
    return z;
}

long Real::exponent() const
{
    if (mpfr_zero_p(v_))
        return -(1L << 40);
    return static_cast<long>(mpfr_get_exp(v_));
}

std::string Real::to_string(int digits) const
{
    std::vector<char> buf(digits + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return std::string(buf.data());
}

Real abs(const Real& x)
{
    Real r(x);
    mpfr_abs(r.get(), r.get(), MPFR_RNDN);
    return r;
}

Real sqrt(const Real& x)
{
    Real r(x);
    mpfr_sqrt(r.get(), r.get(), MPFR_RNDN);
    return r;
}

Real exp(const Real& x)
{
    Real r(x);
    mpfr_exp(r.get(), r.get(), MPFR_RNDN);
    return r;
}

Real log(const Real& x)
{
    Real r(x);
    mpfr_log(r.get(), r.get(), MPFR_RNDN);
    return r;
}

Real sin(const Real& x)
{
    Real r(x);
    mpfr_sin(r.get(), r.get(), MPFR_RNDN);
    return r;
}

Real cos(const Real& x)
{
    Real r(x);
    mpfr_cos(r.get(), r.get(), MPFR_RNDN);
    return r;
}

Real atan2(const Real& y, const Real& x)
{
    Real r(std::max(x.bits(), y.bits()));
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}

Real agm(const Real& a, const Real& b)
{
    Real r(std::max(a.bits(), b.bits()));
    mpfr_agm(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

Real ldexp(const Real& x, long e)
{
    Real r(x);
    mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Complex Complex::exp_2pi_i(const Rational& r, long bits)
{
    // Reduce r mod 1 exactly before evaluating.
    Rational f = r - Rational(floor_div(r.get_num(), r.get_den()));
    Real t = Real(f, bits + 8) * Real::pi(bits + 8);
    t = ldexp(t, 1);
    Real c = cos(t), s = sin(t);
    mpfr_prec_round(c.get(), bits, MPFR_RNDN);
    mpfr_prec_round(s.get(), bits, MPFR_RNDN);
    return Complex(c, s);
}

Complex& Complex::operator+=(const Complex& o)
{
    re += o.re;
    im += o.im;
    return *this;
}

Complex& Complex::operator-=(const Complex& o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

Complex& Complex::operator*=(const Complex& o)
{
    Real a = re * o.re - im * o.im;
    Real b = re * o.im + im * o.re;
    re = std::move(a);
    im = std::move(b);
    return *this;
}

Complex& Complex::operator*=(const Real& o)
{
    re *= o;
    im *= o;
    return *this;
}

Complex& Complex::operator/=(const Complex& o)
{
    Real d = o.norm();
    Real a = (re * o.re + im * o.im) / d;
    Real b = (im * o.re - re * o.im) / d;
    re = std::move(a);
    im = std::move(b);
    return *this;
}

Real Complex::abs() const
{
    Real r(bits());
    mpfr_hypot(r.get(), re.get(), im.get(), MPFR_RNDN);
    return r;
}

std::string Complex::to_string(int digits) const
{
    std::string s = re.to_string(digits);
    if (im.sign() >= 0)
        s += "+";
    return s + im.to_string(digits) + "i";
}

Complex exp(const Complex& z)
{
    Real m = exp(z.re);
    return Complex(m * cos(z.im), m * sin(z.im));
}

Complex log(const Complex& z) { return Complex(log(z.abs()), z.arg()); }

Complex sqrt(const Complex& z)
{
    Real r = z.abs();
    if (r.is_zero())
        return Complex(z.bits());
    Real two(2L, z.bits());
    Real a = sqrt((r + z.re) / two);
    Real b = sqrt((r - z.re) / two);
    if (z.im.sign() < 0)
        b = -b;
    return Complex(a, b);
}

Complex pow(const Complex& z, long e)
{
    if (e < 0)
        return Complex::one(z.bits()) / pow(z, -e);
    Complex r = Complex::one(z.bits());
    Complex b = z;
    while (e) {
        if (e & 1)
            r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Real abs(const Complex& z) { return z.abs(); }

Complex agm(const Complex& a0, const Complex& b0)
{
    long bits = std::max(a0.bits(), b0.bits());
    Complex a = a0, b = b0;
    Real two(2L, bits);
    for (int it = 0; it < 10 * bits; ++it) {
        Complex an = (a + b);
        an.re /= two;
        an.im /= two;
        Complex bn = sqrt(a * b);
        // Choose the branch with |an - bn| <= |an + bn|.
        if ((an - bn).norm() > (an + bn).norm())
            bn = -bn;
        a = std::move(an);
        b = std::move(bn);
        Real d = (a - b).abs();
        if (d.is_zero() || d.exponent() < a.abs().exponent() - bits + 2)
            return a;
    }
    fail(Errc::PrecisionUnreachable, "complex AGM did not converge");
}

Rational rational_reconstruct(const Real& x, const Integer& denom_bound, const Real& tol)
{
    long bits = x.bits();
    // Continued-fraction convergents of x.
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Real r = x;
    for (int it = 0; it < 4 * bits + 16; ++it) {
        Integer a = r.floor();
        Integer p2 = a * p1 + p0;
        Integer q2 = a * q1 + q0;
        if (q2 > denom_bound)
            break;
        Rational cand(p2, q2);
        cand.canonicalize();
        if (abs(x - Real(cand, bits)) <= tol)
            return cand;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        Real frac = r - Real(a, bits);
        if (frac.is_zero())
            break;
        r = Real(1L, bits) / frac;
    }
    fail(Errc::NoRationalInBall, "no rational with denominator <= " + denom_bound.get_str() + " near " + x.to_string(30));
}

Rational rational_reconstruct(const Real& x, const Integer& denom_bound)
{
    Real one(1L, x.bits());
    Real tol = ldexp(max(one, abs(x)), -(x.bits() - 8));
    return rational_reconstruct(x, denom_bound, tol);
}

}
