#include "modparam/sl2.hpp"

#include "modparam/error.hpp"

namespace modparam {

Complex Mat2::apply(const Complex& z) const
{
    long bits = z.bits();
    Complex num = z * Real(a, bits) + Complex(Real(b, bits));
    Complex den = z * Real(c, bits) + Complex(Real(d, bits));
    return num / den;
}

void Mat2::apply_cusp(long p, long q, long& outp, long& outq) const
{
    long np = a * p + b * q, nq = c * p + d * q;
    long g = gcd_long(np, nq);
    if (g == 0)
        fail(Errc::InvalidArgument, "degenerate cusp");
    np /= g;
    nq /= g;
    if (nq < 0 || (nq == 0 && np < 0)) {
        np = -np;
        nq = -nq;
    }
    outp = np;
    outq = nq;
}

std::string Mat2::to_string() const
{
    return "(" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(c) + "," + std::to_string(d) + ")";
}

Mat2 complete_bottom_row(long c, long d)
{
    long x, y;
    long g = ext_gcd(d, -c, x, y);
    require(g == 1, Errc::InvalidArgument, "bottom row (" + std::to_string(c) + "," + std::to_string(d) + ") is not primitive");
    return {x, y, c, d};
}

}
