#include "modparam/periods.hpp"

#include "modparam/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace modparam {

namespace {

Complex cplx(const Rational& r, long bits) { return Complex(Real(r, bits)); }

Complex two_pi_i(long bits)
{
    Real pi = Real::pi(bits);
    return Complex(Real(bits), pi + pi);
}

// Roots of x^3 + A x^2 + B x + C by simultaneous Weierstrass iteration.
std::vector<Complex> cubic_roots(const Rational& A, const Rational& B, const Rational& C, long bits)
{
    long wb = bits + 32;
    Complex cA = cplx(A, wb), cB = cplx(B, wb), cC = cplx(C, wb);
    auto p = [&](const Complex& x) { return ((x + cA) * x + cB) * x + cC; };
    Real R(1L, wb);
    for (const Rational* r : {&A, &B, &C})
        R = max(R, Real(abs(*r), wb) + Real(1L, wb));
    Complex seed(Real(0.4, wb), Real(0.9, wb));
    std::vector<Complex> z{seed * R, seed * seed * R, seed * seed * seed * R};
    Real tol = ldexp(R, -(bits + 16));
    for (int iter = 0; iter < 4000; ++iter) {
        Real delta(wb);
        for (int k = 0; k < 3; ++k) {
            Complex den = Complex::one(wb);
            for (int j = 0; j < 3; ++j)
                if (j != k)
                    den *= z[k] - z[j];
            Complex step = p(z[k]) / den;
            z[k] -= step;
            delta = max(delta, step.abs());
        }
        if (delta < tol)
            return z;
    }
    fail(Errc::PrecisionUnreachable, "cubic root iteration did not converge");
}

Complex gauss_normal(Complex& r1, Complex& r2)
{
    for (int iter = 0; iter < 10000; ++iter) {
        if (r2.abs() < r1.abs())
            std::swap(r1, r2);
        Complex t = r2 / r1;
        Integer m = t.re.round();
        if (m == 0)
            break;
        r2 -= r1 * Real(m, r1.bits());
    }
    Complex t = r2 / r1;
    if (t.im.sign() < 0) {
        r2 = -r2;
        t = -t;
    }
    return t;
}

void eisenstein(const Complex& tau, long bits, Complex& E4, Complex& E6)
{
    long wb = bits + 32;
    Complex q = exp(two_pi_i(wb) * tau);
    Complex qn = q;
    Complex s3(wb), s5(wb);
    Real tol = ldexp(Real(1L, wb), -(bits + 24));
    for (long n = 1;; ++n) {
        Complex term = qn / (Complex::one(wb) - qn);
        Real n3(n * n * n, wb);
        s3 += term * n3;
        s5 += term * (n3 * Real(n * n, wb));
        if (qn.abs() * n3 * Real(n * n, wb) < tol)
            break;
        qn *= q;
    }
    E4 = Complex::one(wb) + s3 * Real(240L, wb);
    E6 = Complex::one(wb) - s5 * Real(504L, wb);
}

}

void eisenstein_series(const Complex& tau, long bits, Complex& E4, Complex& E6)
{
    require(tau.im.sign() > 0, Errc::InvalidArgument, "point must lie in the upper half-plane");
    eisenstein(tau, bits, E4, E6);
}

Real PeriodLattice::area() const
{
    return (w1.conj() * w2).im;
}

void PeriodLattice::coordinates(const Complex& z, Real& x, Real& y) const
{
    Complex t = z / w1;
    Complex tt = tau();
    y = t.im / tt.im;
    x = t.re - y * tt.re;
}

Complex PeriodLattice::point(const Rational& x, const Rational& y) const
{
    return w1 * Real(x, bits + 32) + w2 * Real(y, bits + 32);
}

PeriodLattice lattice_from_basis(const Complex& w1_, const Complex& w2_, long bits)
{
    PeriodLattice L;
    L.bits = bits;
    L.w1 = w1_;
    L.w2 = w2_;
    Complex t = L.w2 / L.w1;
    if (t.im.sign() < 0) {
        L.w2 = -L.w2;
        t = -t;
    }
    L.w2 -= L.w1 * Real(t.re.floor(), L.w1.bits());
    L.r1 = L.w1;
    L.r2 = L.w2;
    Complex tau = gauss_normal(L.r1, L.r2);
    Complex E4, E6;
    eisenstein(tau, bits, E4, E6);
    long wb = bits + 32;
    Real pi = Real::pi(wb);
    Real pi2 = pi * pi, pi4 = pi2 * pi2;
    Complex r2p = L.r1 * L.r1;
    Complex r4p = r2p * r2p;
    L.g2 = E4 * (pi4 * Real(4L, wb) / Real(3L, wb)) / r4p;
    L.g3 = E6 * (pi4 * pi2 * Real(8L, wb) / Real(27L, wb)) / (r4p * r2p);
    return L;
}

PeriodLattice period_lattice(const EllipticCurve& E, long bits)
{
    long wb = bits + 32;
    auto roots = cubic_roots(E.b2 / 4, E.b4 / 2, E.b6 / 4, bits);
    Real pi = Real::pi(wb);
    Complex w1, w2;
    if (E.disc > 0) {
        std::vector<Real> e;
        for (auto& r : roots)
            e.push_back(r.re);
        std::sort(e.begin(), e.end(), [](const Real& a, const Real& b) { return a > b; });
        w1 = Complex(pi / agm(sqrt(e[0] - e[2]), sqrt(e[0] - e[1])));
        w2 = Complex(Real(wb), pi / agm(sqrt(e[0] - e[2]), sqrt(e[1] - e[2])));
    } else {
        size_t k = 0;
        for (size_t i = 1; i < roots.size(); ++i)
            if (abs(roots[i].im) < abs(roots[k].im))
                k = i;
        Real e1 = roots[k].re;
        Real A = e1 * Real(3L, wb) + Real(E.b2 / 4, wb);
        Real B = sqrt(e1 * e1 * Real(3L, wb) + e1 * Real(E.b2 / 2, wb) + Real(E.b4 / 2, wb));
        Real twoB = B + B;
        Real s = sqrt(B) * Real(2L, wb);
        Real r1 = (pi + pi) / agm(s, sqrt(twoB + A));
        w1 = Complex(r1);
        w2 = Complex(-r1 / Real(2L, wb), pi / agm(s, sqrt(twoB - A)));
    }
    PeriodLattice L = lattice_from_basis(w1, w2, bits);
    L.g2_exact = E.g2();
    L.g3_exact = E.g3();
    Real tol = ldexp(Real(1L, wb), -(bits - 8));
    Real s2 = max(Real(1L, wb), Real(abs(L.g2_exact), wb)), s3 = max(Real(1L, wb), Real(abs(L.g3_exact), wb));
    require((L.g2 - cplx(L.g2_exact, wb)).abs() < tol * s2 && (L.g3 - cplx(L.g3_exact, wb)).abs() < tol * s3,
            Errc::PrecisionUnreachable, "lattice invariants do not reproduce c4, c6");
    return L;
}

WpLaurent wp_laurent(const Rational& g2, const Rational& g3, long K)
{
    require(K >= 2, Errc::InvalidArgument, "wp_laurent needs K >= 2");
    WpLaurent W;
    W.g2 = g2;
    W.g3 = g3;
    W.c.assign(K + 1, Rational(0));
    W.c[2] = g2 / 20;
    if (K >= 3)
        W.c[3] = g3 / 28;
    for (long k = 4; k <= K; ++k) {
        Rational s = 0;
        for (long m = 2; m <= k - 2; ++m)
            s += W.c[m] * W.c[k - m];
        W.c[k] = 3 * s / ((2 * k + 1) * (k - 3));
    }
    return W;
}

void wp_both(const PeriodLattice& L, const Complex& z, Complex& p, Complex& dp)
{
    long wb = L.bits + 32;
    Complex tau = L.r2 / L.r1;
    Complex v = z / L.r1;
    v -= tau * Real((v.im / tau.im).round(), wb);
    v -= Complex(Real(v.re.round(), wb));
    Complex tpi = two_pi_i(wb);
    Complex x = exp(tpi * v), xi = Complex::one(wb) / x;
    Complex q = exp(tpi * tau);
    Complex one = Complex::one(wb);
    Real tol = ldexp(Real(1L, wb), -(L.bits + 16));
    require(!((one - x).abs() < tol), Errc::ExpansionUndefined, "wp evaluated at a lattice point");
    auto g = [&](const Complex& t) { return t / ((one - t) * (one - t)); };
    auto h = [&](const Complex& t) {
        Complex u = one - t;
        return t * (one + t) / (u * u * u);
    };
    Complex S = Complex(Real(1L, wb) / Real(12L, wb)) + g(x);
    Complex P = h(x);
    Complex qn = q;
    while (true) {
        Complex t = qn * x, s = qn * xi;
        S += g(t) + g(s) - g(qn) * Real(2L, wb);
        P += h(t) - h(s);
        if (t.abs() < tol && s.abs() < tol)
            break;
        qn *= q;
    }
    Complex k = tpi / L.r1;
    Complex k2 = k * k;
    p = k2 * S;
    dp = k2 * k * P;
}

Complex wp(const PeriodLattice& L, const Complex& z)
{
    Complex p, dp;
    wp_both(L, z, p, dp);
    return p;
}

Complex wp_prime(const PeriodLattice& L, const Complex& z)
{
    Complex p, dp;
    wp_both(L, z, p, dp);
    return dp;
}

LatticePoint snap_to_lattice(const PeriodLattice& L, const Complex& z, long bits)
{
    Real x, y;
    L.coordinates(z, x, y);
    LatticePoint P;
    Integer n1 = x.round(), n2 = y.round();
    require(n1.fits_slong_p() && n2.fits_slong_p(), Errc::LatticeSnapFailed, "lattice coordinates out of range");
    P.n1 = n1.get_si();
    P.n2 = n2.get_si();
    P.value = L.point(P.n1, P.n2);
    P.raw = z;
    Real tol = ldexp(max(Real(1L, z.bits()), L.w1.abs()), -(bits / 2));
    require((z - P.value).abs() < tol, Errc::LatticeSnapFailed,
            "value " + z.to_string(12) + " is not within tolerance of the lattice");
    return P;
}

long eichler_terms_needed(double im_z, long bits)
{
    require(im_z > 0, Errc::InvalidArgument, "point must lie in the upper half-plane");
    double decay = 2 * M_PI * im_z * M_LOG2E;
    double r = std::exp(-2 * M_PI * im_z);
    double extra = -std::log2(1 - r) + 2;
    return static_cast<long>(std::ceil((bits + extra) / decay)) + 1;
}

Complex eichler_direct(const NewformCoefficients& f, const Complex& z, long bits)
{
    require(z.im.sign() > 0, Errc::InvalidArgument, "point must lie in the upper half-plane");
    long M = eichler_terms_needed(z.im.to_double(), bits);
    if (M > f.size())
        fail(Errc::ConvergenceBudgetExceeded,
             "need " + std::to_string(M) + " coefficients at Im z = " + z.im.to_string(6) + ", have " + std::to_string(f.size()));
    long wb = bits + 32;
    Complex q = exp(two_pi_i(wb) * z);
    Complex s(wb);
    for (long n = M; n >= 1; --n) {
        s *= q;
        if (f[n] != 0)
            s += Complex(Real(f[n], wb) / Real(n, wb));
    }
    s *= q;
    if (f.manin != 1)
        s *= Real(f.manin, wb);
    return s;
}

Complex eichler_integral(const NewformCoefficients& f, const PeriodLattice& L, const Complex& z, long bits)
{
    long N = f.level;
    double y = z.im.to_double(), x = z.re.to_double();
    if (N > 0 && y * N < 1) {
        double best = 0.5;
        Mat2 g;
        bool found = false;
        for (long c = N; c * y < 1; c += N) {
            long d0 = std::lround(-c * x);
            for (long d = d0 - 1; d <= d0 + 1; ++d) {
                if (gcd_long(c, d) != 1)
                    continue;
                double re = c * x + d, im = c * y;
                double n2 = re * re + im * im;
                if (n2 < best) {
                    best = n2;
                    g = complete_bottom_row(c, d);
                    found = true;
                }
            }
        }
        if (found) {
            Complex w = g.apply(z);
            return eichler_integral(f, L, w, bits) - period_map(f, L, g, bits).value;
        }
    }
    return eichler_direct(f, z, bits);
}

LatticePoint period_map(const NewformCoefficients& f, const PeriodLattice& L, const Mat2& g, long bits)
{
    require(g.det() == 1, Errc::InvalidArgument, "matrix must have determinant 1");
    require(f.level <= 0 || g.c % f.level == 0, Errc::InvalidArgument, "matrix is not in Gamma0(N)");
    if (g.c == 0) {
        LatticePoint P;
        P.value = Complex(L.bits + 32);
        P.raw = P.value;
        return P;
    }
    long wb = bits + 32;
    long ac = std::labs(g.c);
    Complex z1(Real(frac(-g.d, g.c), wb), Real(frac(1, ac), wb));
    Complex C = eichler_direct(f, g.apply(z1), bits) - eichler_direct(f, z1, bits);
    return snap_to_lattice(L, C, bits);
}

const char* lattice_relation_name(LatticeRelationKind k)
{
    switch (k) {
    case LatticeRelationKind::Equal: return "equal";
    case LatticeRelationKind::Sublattice: return "sublattice";
    case LatticeRelationKind::Superlattice: return "superlattice";
    case LatticeRelationKind::CommonSublattice: return "common-sublattice";
    case LatticeRelationKind::Unrelated: return "unrelated";
    }
    return "";
}

namespace {

// Basis (rows) of the Z-span of integer vectors in Z^2.
void span_basis_2d(std::vector<std::array<long, 2>> rows, long out[2][2])
{
    std::array<long, 2> first{0, 0};
    while (true) {
        long best = -1;
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i][0] != 0 && (best < 0 || std::labs(rows[i][0]) < std::labs(rows[best][0])))
                best = static_cast<long>(i);
        if (best < 0)
            break;
        bool reduced = false;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<long>(i) == best || rows[i][0] == 0)
                continue;
            long k = rows[i][0] / rows[best][0];
            rows[i][0] -= k * rows[best][0];
            rows[i][1] -= k * rows[best][1];
            reduced = true;
        }
        if (!reduced) {
            first = rows[best];
            rows.erase(rows.begin() + best);
            break;
        }
    }
    long h = 0;
    for (auto& r : rows)
        h = gcd_long(h, r[1]);
    if (first[0] < 0)
        first = {-first[0], -first[1]};
    if (h != 0)
        first[1] = mod_long(first[1], h);
    out[0][0] = first[0];
    out[0][1] = first[1];
    out[1][0] = 0;
    out[1][1] = h;
}

}

LatticeRelation lattice_relation(const PeriodLattice& L1, const PeriodLattice& L2, long denom_bound)
{
    LatticeRelation R;
    long bits = std::min(L1.bits, L2.bits);
    Real tol = ldexp(Real(1L, bits + 32), -(bits / 2));
    try {
        const Complex* gens[2] = {&L1.w1, &L1.w2};
        for (int i = 0; i < 2; ++i) {
            Real x, y;
            L2.coordinates(*gens[i], x, y);
            R.m[i][0] = rational_reconstruct(x, Integer(denom_bound), tol);
            R.m[i][1] = rational_reconstruct(y, Integer(denom_bound), tol);
        }
    } catch (const Error& e) {
        if (e.code() != Errc::NoRationalInBall)
            throw;
        R.kind = LatticeRelationKind::Unrelated;
        return R;
    }
    Rational det = R.m[0][0] * R.m[1][1] - R.m[0][1] * R.m[1][0];
    if (det == 0) {
        R.kind = LatticeRelationKind::Unrelated;
        return R;
    }
    Rational inv[2][2] = {{R.m[1][1] / det, -R.m[0][1] / det}, {-R.m[1][0] / det, R.m[0][0] / det}};
    auto integral = [](const Rational (&a)[2][2]) {
        return is_integer(a[0][0]) && is_integer(a[0][1]) && is_integer(a[1][0]) && is_integer(a[1][1]);
    };
    if (integral(R.m)) {
        long d = std::labs(det.get_num().get_si());
        R.kind = d == 1 ? LatticeRelationKind::Equal : LatticeRelationKind::Sublattice;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                R.l3[i][j] = R.m[i][j].get_num().get_si();
        R.index_in_1 = 1;
        R.index_in_2 = d;
        return R;
    }
    if (integral(inv)) {
        R.kind = LatticeRelationKind::Superlattice;
        R.l3[0][0] = R.l3[1][1] = 1;
        R.index_in_1 = std::labs(Rational(1 / det).get_num().get_si());
        R.index_in_2 = 1;
        return R;
    }
    // L1 n L2: integer u with u M integral, found modulo the common denominator.
    Integer den = 1;
    for (auto& row : R.m)
        for (auto& v : row)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    long dd = den.get_si();
    long A[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            A[i][j] = Rational(R.m[i][j] * dd).get_num().get_si();
    std::vector<std::array<long, 2>> gens{{dd, 0}, {0, dd}};
    for (long u0 = 0; u0 < dd; ++u0)
        for (long u1 = 0; u1 < dd; ++u1)
            if (mod_long(u0 * A[0][0] + u1 * A[1][0], dd) == 0 && mod_long(u0 * A[0][1] + u1 * A[1][1], dd) == 0)
                gens.push_back({u0, u1});
    long U[2][2];
    span_basis_2d(gens, U);
    R.kind = LatticeRelationKind::CommonSublattice;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Rational v = U[i][0] * R.m[0][j] + U[i][1] * R.m[1][j];
            R.l3[i][j] = v.get_num().get_si();
        }
    R.index_in_1 = std::labs(U[0][0] * U[1][1] - U[0][1] * U[1][0]);
    R.index_in_2 = std::labs(R.l3[0][0] * R.l3[1][1] - R.l3[0][1] * R.l3[1][0]);
    return R;
}

std::vector<TraceSample> eichler_trace(const NewformCoefficients& f, const PeriodLattice& L,
                                       const std::vector<Complex>& vertices, long samples, long bits)
{
    std::vector<TraceSample> out;
    if (vertices.empty())
        return out;
    long wb = bits + 32;
    for (size_t i = 0; i + 1 < vertices.size(); ++i) {
        Complex step = (vertices[i + 1] - vertices[i]) * (Real(1L, wb) / Real(samples, wb));
        for (long s = 0; s < samples; ++s) {
            Complex z = vertices[i] + step * Real(s, wb);
            out.push_back({z, eichler_integral(f, L, z, bits)});
        }
    }
    out.push_back({vertices.back(), eichler_integral(f, L, vertices.back(), bits)});
    return out;
}

}
