#pragma once

#include "modparam/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace modparam {

class Complex;

// Q(zeta_w) in the power basis 1, zeta, ..., zeta^(phi(w)-1).
struct CyclotomicField {
    long w = 1;
    long degree = 1;
    std::vector<Integer> phi; // monic, ascending

    static std::shared_ptr<const CyclotomicField> get(long w);
};

using FieldPtr = std::shared_ptr<const CyclotomicField>;

class Cyclotomic {
public:
    Cyclotomic() : Cyclotomic(CyclotomicField::get(1)) {}
    explicit Cyclotomic(FieldPtr K);
    Cyclotomic(FieldPtr K, const Rational& r);
    Cyclotomic(FieldPtr K, std::vector<Rational> coords);

    static Cyclotomic zeta_power(FieldPtr K, long k);

    const FieldPtr& field() const { return K_; }
    long width() const { return K_->w; }
    const std::vector<Rational>& coords() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const; // throws GaloisResidue if not rational

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Rational& r);
    Cyclotomic operator-() const;
    Cyclotomic inverse() const;

    // zeta -> zeta^t for t coprime to w.
    Cyclotomic galois(long t) const;
    Rational trace() const;
    Complex to_complex(long bits) const;
    // Same element expressed in the larger field Q(zeta_W), w | W.
    Cyclotomic lift(FieldPtr L) const;

    std::string to_string() const;
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

private:
    FieldPtr K_;
    std::vector<Rational> c_;
    void reduce_poly(std::vector<Rational>& p);
    void check_same(const Cyclotomic& o) const;
};

inline Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
inline Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
inline Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
inline Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }
inline bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

// Integer coefficients of the w-th cyclotomic polynomial, ascending.
std::vector<Integer> cyclotomic_polynomial(long w);

}
