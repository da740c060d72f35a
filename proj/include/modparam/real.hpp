#pragma once

#include "modparam/rational.hpp"

#include <mpfr.h>

#include <string>

namespace modparam {

// Multiprecision real with an explicit per-value precision (MPFR, round-to-nearest).
class Real {
public:
    explicit Real(long bits = 64);
    Real(double x, long bits);
    Real(long x, long bits);
    Real(const Integer& x, long bits);
    Real(const Rational& x, long bits);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    static Real pi(long bits);
    static Real parse(const std::string& s, long bits);

    long bits() const { return static_cast<long>(mpfr_get_prec(v_)); }
    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    Real operator-() const;

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    Integer round() const;
    Integer floor() const;
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    // Base-2 exponent; very negative for zero.
    long exponent() const;
    std::string to_string(int digits = 20) const;

    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

private:
    mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real agm(const Real& a, const Real& b);
Real ldexp(const Real& x, long e);
Real max(const Real& a, const Real& b);

class Complex {
public:
    explicit Complex(long bits = 64) : re(bits), im(bits) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(Real r) : re(std::move(r)), im(re.bits()) {}

    static Complex one(long bits) { return Complex(Real(1L, bits), Real(bits)); }
    static Complex i(long bits) { return Complex(Real(bits), Real(1L, bits)); }
    // exp(2 pi i r) for rational r.
    static Complex exp_2pi_i(const Rational& r, long bits);

    Real re, im;

    long bits() const { return std::max(re.bits(), im.bits()); }

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
    Complex& operator*=(const Real& o);
    Complex& operator/=(const Complex& o);
    Complex operator-() const { return Complex(-re, -im); }
    Complex conj() const { return Complex(re, -im); }
    Real norm() const { return re * re + im * im; }
    Real abs() const;
    Real arg() const { return atan2(im, re); }
    std::string to_string(int digits = 20) const;

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator*(Complex a, const Real& b) { return a *= b; }
    friend Complex operator*(const Real& b, Complex a) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
};

Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex sqrt(const Complex& z);
Complex pow(const Complex& z, long e);
Complex agm(const Complex& a, const Complex& b);
Real abs(const Complex& z);

// Continued-fraction reconstruction: the rational p/q with 0 < q <= denom_bound and
// |x - p/q| <= tol. Throws NoRationalInBall when none exists.
Rational rational_reconstruct(const Real& x, const Integer& denom_bound, const Real& tol);
// Default tolerance 2^-(bits - 8) * max(1, |x|).
Rational rational_reconstruct(const Real& x, const Integer& denom_bound);

}
