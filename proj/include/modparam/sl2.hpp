#pragma once

#include "modparam/rational.hpp"
#include "modparam/real.hpp"

#include <string>

namespace modparam {

// Integer 2x2 matrix (a b; c d).
struct Mat2 {
    long a = 1, b = 0, c = 0, d = 1;

    long det() const { return a * d - b * c; }
    Mat2 adjugate() const { return {d, -b, -c, a}; }
    bool in_gamma0(long N) const { return det() == 1 && c % N == 0; }
    Complex apply(const Complex& z) const;
    // Image of a cusp p/q (q = 0 means infinity) as a reduced pair.
    void apply_cusp(long p, long q, long& outp, long& outq) const;
    std::string to_string() const;

    friend Mat2 operator*(const Mat2& x, const Mat2& y)
    {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Mat2& x, const Mat2& y)
    {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
};

inline Mat2 translation(long k) { return {1, k, 0, 1}; }

// A matrix in SL2(Z) with bottom row (c, d), gcd(c, d) = 1.
Mat2 complete_bottom_row(long c, long d);

}
