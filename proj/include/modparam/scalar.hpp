#pragma once

#include "modparam/cyclotomic.hpp"
#include "modparam/rational.hpp"
#include "modparam/residue.hpp"

#include <string>
#include <variant>

namespace modparam {

// Exact coefficient: big rational, element of Q(zeta_w), or residue mod m.
class Scalar {
public:
    enum class Kind { Rational, Cyclotomic, Residue };

    Scalar() : v_(Rational(0)) {}
    Scalar(long x) : v_(Rational(x)) {}
    Scalar(const Rational& x) : v_(x) {}
    Scalar(const Cyclotomic& x) : v_(x) {}
    Scalar(const Residue& x) : v_(x) {}

    Kind kind() const { return static_cast<Kind>(v_.index()); }
    const Rational& rational() const { return std::get<Rational>(v_); }
    const Cyclotomic& cyclotomic() const { return std::get<Cyclotomic>(v_); }
    const Residue& residue() const { return std::get<Residue>(v_); }

    bool is_zero() const;
    bool is_unit() const;
    Scalar inverse() const;
    // Rational value if this is (or collapses to) a rational; throws GaloisResidue.
    Rational to_rational() const;
    Scalar reduce_mod(std::uint64_t m) const;
    Scalar zero_like() const;
    Scalar one_like() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }
    Scalar operator-() const;

    std::string to_string() const;

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

private:
    std::variant<Rational, Cyclotomic, Residue> v_;
    static void unify(Scalar& a, Scalar& b);
};

}
