#include "modparam/algebra.hpp"

#include "modparam/error.hpp"

#include <algorithm>

namespace modparam {

namespace {

// Row-reduces [A | b] in place; returns pivot columns.
std::vector<long> row_reduce(QMatrix& A, std::vector<Rational>* b, long cols)
{
    std::vector<long> piv;
    long rows = static_cast<long>(A.size());
    long r = 0;
    for (long c = 0; c < cols && r < rows; ++c) {
        long p = -1;
        for (long i = r; i < rows; ++i)
            if (A[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        std::swap(A[p], A[r]);
        if (b)
            std::swap((*b)[p], (*b)[r]);
        Rational inv = 1 / A[r][c];
        for (long k = c; k < cols; ++k)
            A[r][k] *= inv;
        if (b)
            (*b)[r] *= inv;
        for (long i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0)
                continue;
            Rational t = A[i][c];
            for (long k = c; k < cols; ++k)
                if (A[r][k] != 0)
                    A[i][k] -= t * A[r][k];
            if (b)
                (*b)[i] -= t * (*b)[r];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

}

LinearSolution solve_exact(QMatrix A, std::vector<Rational> b)
{
    LinearSolution out;
    long rows = static_cast<long>(A.size());
    require(static_cast<long>(b.size()) == rows, Errc::InvalidArgument, "solve_exact: size mismatch");
    long cols = rows ? static_cast<long>(A[0].size()) : 0;
    auto piv = row_reduce(A, &b, cols);
    out.rank = static_cast<long>(piv.size());
    for (long i = out.rank; i < rows; ++i)
        if (b[i] != 0)
            return out;
    out.consistent = true;
    out.unique = out.rank == cols;
    out.x.assign(cols, Rational(0));
    for (long i = 0; i < out.rank; ++i)
        out.x[piv[i]] = b[i];
    return out;
}

std::vector<std::vector<Rational>> kernel_exact(QMatrix A, long cols)
{
    auto piv = row_reduce(A, nullptr, cols);
    std::vector<char> is_piv(cols, 0);
    for (long c : piv)
        is_piv[c] = 1;
    std::vector<std::vector<Rational>> out;
    for (long f = 0; f < cols; ++f) {
        if (is_piv[f])
            continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (size_t i = 0; i < piv.size(); ++i)
            v[piv[i]] = -A[i][f];
        out.push_back(std::move(v));
    }
    return out;
}

QPoly poly_derivative(const QPoly& p)
{
    QPoly d;
    for (size_t i = 1; i < p.size(); ++i)
        d.push_back(p[i] * static_cast<long>(i));
    poly_trim(d);
    return d;
}

QPoly poly_monic(const QPoly& p)
{
    QPoly q = p;
    poly_trim(q);
    require(!q.empty(), Errc::InvalidArgument, "zero polynomial");
    Rational l = q.back();
    for (auto& c : q)
        c /= l;
    return q;
}

long poly_multiplicity(const QPoly& p, const QPoly& factor)
{
    QPoly cur = p;
    poly_trim(cur);
    require(!cur.empty(), Errc::InvalidArgument, "multiplicity in the zero polynomial");
    long e = 0;
    while (true) {
        QPoly q, r;
        poly_divmod(cur, factor, q, r);
        if (!r.empty())
            return e;
        cur = std::move(q);
        ++e;
    }
}

std::vector<Complex> poly_roots(const QPoly& p0, long bits)
{
    QPoly p = poly_monic(p0);
    long n = static_cast<long>(p.size()) - 1;
    std::vector<Complex> z;
    if (n <= 0)
        return z;
    long wb = bits + 64;
    std::vector<Complex> c;
    for (auto& x : p)
        c.emplace_back(Real(x, wb));
    // Cauchy bound for the initial circle.
    Real R(1L, wb);
    for (long i = 0; i < n; ++i)
        R = max(R, abs(c[i]) + Real(1L, wb));
    for (long k = 0; k < n; ++k) {
        Complex e = Complex::exp_2pi_i(Rational(4 * k + 1, 4 * n), wb);
        z.push_back(e * (R * Real(0.5, wb)));
    }
    auto eval = [&](const Complex& x, Complex& v, Complex& dv) {
        v = c[n];
        dv = Complex(wb);
        for (long i = n - 1; i >= 0; --i) {
            dv = dv * x + v;
            v = v * x + c[i];
        }
    };
    Real tol = ldexp(Real(1L, wb), -(bits + 16));
    for (int it = 0; it < 2000; ++it) {
        Real worst(wb);
        for (long k = 0; k < n; ++k) {
            Complex v(wb), dv(wb);
            eval(z[k], v, dv);
            if (v.abs().is_zero())
                continue;
            Complex ratio = v / dv;
            Complex s(wb);
            for (long j = 0; j < n; ++j)
                if (j != k)
                    s += Complex::one(wb) / (z[k] - z[j]);
            Complex step = ratio / (Complex::one(wb) - ratio * s);
            z[k] -= step;
            Real rel = step.abs() / max(Real(1L, wb), z[k].abs());
            worst = max(worst, rel);
        }
        if (worst < tol)
            break;
    }
    return z;
}

namespace {

Integer primitive_lead(const QPoly& p)
{
    auto v = poly_primitive(p);
    return v.empty() ? Integer(1) : Integer(abs(v.back()));
}

// Yun's algorithm: pieces[i] is the product of the irreducible factors of multiplicity i + 1.
std::vector<QPoly> squarefree_pieces(const QPoly& p)
{
    std::vector<QPoly> out;
    QPoly a = poly_monic(p);
    QPoly b = poly_derivative(a);
    if (b.empty())
        return out;
    QPoly c = poly_gcd(a, b);
    QPoly w, r;
    poly_divmod(a, c, w, r);
    QPoly y;
    poly_divmod(b, c, y, r);
    QPoly z = poly_sub(y, poly_derivative(w));
    while (w.size() > 1) {
        QPoly g = z.empty() ? poly_monic(w) : poly_gcd(w, z);
        out.push_back(g);
        QPoly nw, ny;
        poly_divmod(w, g, nw, r);
        poly_divmod(z, g, ny, r);
        w = nw;
        z = poly_sub(ny, poly_derivative(w));
    }
    return out;
}

bool try_rational(const Real& x, const Integer& den, long bits, Rational& out)
{
    try {
        Real tol = ldexp(max(Real(1L, x.bits()), abs(x)), -(bits / 2));
        out = rational_reconstruct(x, den, tol);
        return true;
    } catch (const Error&) {
        return false;
    }
}

}

std::vector<PolyFactor> factor_over_q(const QPoly& p, long bits)
{
    std::vector<PolyFactor> out;
    QPoly q = p;
    poly_trim(q);
    require(!q.empty(), Errc::InvalidArgument, "factoring the zero polynomial");
    auto pieces = squarefree_pieces(q);
    for (size_t m = 0; m < pieces.size(); ++m) {
        QPoly rest = pieces[m];
        if (rest.size() <= 1)
            continue;
        Integer lead = primitive_lead(rest);
        auto roots = poly_roots(rest, bits);
        std::vector<char> used(roots.size(), 0);
        for (size_t i = 0; i < roots.size(); ++i) {
            Rational r;
            if (abs(roots[i].im) > ldexp(max(Real(1L, bits), roots[i].abs()), -(bits / 2)))
                continue;
            if (!try_rational(roots[i].re, lead, bits, r) || poly_eval(rest, r) != 0)
                continue;
            QPoly lin{-r, Rational(1)}, qq, rr;
            poly_divmod(rest, lin, qq, rr);
            rest = qq;
            used[i] = 1;
            out.push_back({lin, static_cast<long>(m) + 1, true});
        }
        for (size_t i = 0; i < roots.size() && rest.size() > 3; ++i) {
            if (used[i])
                continue;
            for (size_t j = i + 1; j < roots.size(); ++j) {
                if (used[j])
                    continue;
                Complex s = roots[i] + roots[j], t = roots[i] * roots[j];
                Real tol = ldexp(max(Real(1L, bits), s.abs() + t.abs()), -(bits / 2));
                if (abs(s.im) > tol || abs(t.im) > tol)
                    continue;
                Rational rs, rt;
                Integer l2 = lead * lead;
                if (!try_rational(s.re, l2, bits, rs) || !try_rational(t.re, l2, bits, rt))
                    continue;
                QPoly quad{rt, -rs, Rational(1)}, qq, rr;
                poly_divmod(rest, quad, qq, rr);
                if (!rr.empty())
                    continue;
                rest = qq;
                used[i] = used[j] = 1;
                out.push_back({quad, static_cast<long>(m) + 1, true});
                break;
            }
        }
        if (rest.size() > 1)
            out.push_back({poly_monic(rest), static_cast<long>(m) + 1, rest.size() <= 3});
    }
    return out;
}

}
