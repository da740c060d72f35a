#pragma once

#include "modparam/rational.hpp"

#include <cstdint>
#include <string>

namespace modparam {

// Element of Z/m, m >= 2 (not necessarily prime).
class Residue {
public:
    Residue() = default;
    Residue(std::uint64_t m, std::int64_t v);
    // Reduction of a rational; throws DenominatorNotCoprime.
    Residue(std::uint64_t m, const Rational& r);

    std::uint64_t modulus() const { return m_; }
    std::uint64_t value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool is_unit() const;
    Residue inverse() const;

    Residue& operator+=(const Residue& o);
    Residue& operator-=(const Residue& o);
    Residue& operator*=(const Residue& o);
    Residue operator-() const { return Residue(m_, -static_cast<std::int64_t>(v_)); }

    std::string to_string() const { return std::to_string(v_); }

    friend Residue operator+(Residue a, const Residue& b) { return a += b; }
    friend Residue operator-(Residue a, const Residue& b) { return a -= b; }
    friend Residue operator*(Residue a, const Residue& b) { return a *= b; }
    friend Residue operator/(const Residue& a, const Residue& b) { return a * b.inverse(); }
    friend bool operator==(const Residue& a, const Residue& b) { return a.m_ == b.m_ && a.v_ == b.v_; }
    friend bool operator!=(const Residue& a, const Residue& b) { return !(a == b); }

private:
    std::uint64_t m_ = 2;
    std::uint64_t v_ = 0;
    void check(const Residue& o) const;
};

}
