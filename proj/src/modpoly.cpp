#include "modparam/modpoly.hpp"

#include "modparam/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>

namespace modparam {

namespace {

constexpr long kExact = 1L << 40;

Integer igcd(const Integer& a, const Integer& b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

long to_long(const Integer& x)
{
    require(x.fits_slong_p(), Errc::InvalidArgument, "integer out of range: " + x.get_str());
    return x.get_si();
}

}

QuadPoint QuadPoint::from_form(const Integer& a, const Integer& b, const Integer& c)
{
    Integer g = igcd(igcd(a, b), c);
    require(g != 0, Errc::InvalidArgument, "zero quadratic form");
    QuadPoint z{a / g, b / g, c / g};
    if (z.a < 0) {
        z.a = -z.a;
        z.b = -z.b;
        z.c = -z.c;
    }
    require(z.a != 0 && z.discriminant() < 0, Errc::InvalidArgument, "form does not define a point of the upper half-plane");
    return z;
}

QuadPoint QuadPoint::transform(const Mat2& g) const
{
    require(g.det() > 0, Errc::InvalidArgument, "matrix must have positive determinant");
    Integer p = g.a, q = g.b, r = g.c, s = g.d;
    Integer A = a * s * s - b * s * r + c * r * r;
    Integer B = -2 * a * s * q + b * (s * p + q * r) - 2 * c * r * p;
    Integer C = a * q * q - b * q * p + c * p * p;
    return from_form(A, B, C);
}

Complex QuadPoint::value(long bits) const
{
    Real den(Integer(2 * a), bits);
    Real re = Real(Integer(-b), bits) / den;
    Real im = sqrt(Real(Integer(-discriminant()), bits)) / den;
    return Complex(re, im);
}

std::string QuadPoint::to_string() const
{
    Integer D = discriminant();
    Integer g0 = igcd(b, 2 * a);
    Integer g = 1;
    for (Integer t = g0; t >= 1; --t) {
        if (g0 % t == 0 && D % (t * t) == 0) {
            g = t;
            break;
        }
    }
    Integer nb = -b / g, nd = D / (g * g), den = 2 * a / g;
    std::string s;
    if (nb != 0)
        s = "(" + nb.get_str() + " + sqrt(" + nd.get_str() + "))";
    else
        s = "sqrt(" + nd.get_str() + ")";
    if (den != 1)
        s += "/" + den.get_str();
    return s;
}

std::string QuadPoint::minpoly_string(const std::string& var) const
{
    return poly_to_string(QPoly{Rational(c), Rational(b), Rational(a)}, var);
}

QuadPoint reduce_quad(const QuadPoint& z0, Mat2& R)
{
    QuadPoint z = z0;
    R = Mat2{};
    const Mat2 S{0, -1, 1, 0};
    for (int it = 0; it < 10000; ++it) {
        // translate so that -a < b <= a
        Integer k;
        mpz_fdiv_q(k.get_mpz_t(), Integer(z.b + z.a).get_mpz_t(), Integer(2 * z.a).get_mpz_t());
        if (z.b - 2 * z.a * k == -z.a)
            k -= 1;
        if (k != 0) {
            Mat2 T = translation(to_long(k));
            z = z.transform(T);
            R = T * R;
        }
        if (z.a > z.c || (z.a == z.c && z.b < 0)) {
            z = z.transform(S);
            R = S * R;
            continue;
        }
        return z;
    }
    fail(Errc::InvalidArgument, "quadratic form reduction did not terminate");
}

bool gamma0_equivalent(const QuadPoint& z1, const QuadPoint& z2, long N, Mat2* witness)
{
    Mat2 R1, R2;
    QuadPoint t1 = reduce_quad(z1, R1), t2 = reduce_quad(z2, R2);
    if (!(t1 == t2))
        return false;
    std::vector<Mat2> stab{Mat2{}};
    if (t1.b == 0 && t1.a == t1.c)
        stab.push_back(Mat2{0, -1, 1, 0});
    if (t1.a == t1.b && t1.b == t1.c) {
        Mat2 U{0, -1, 1, 1};
        stab.push_back(U);
        stab.push_back(U * U);
    }
    for (const Mat2& s : stab) {
        Mat2 g = R2.adjugate() * s * R1;
        if (g.c % N == 0) {
            if (witness)
                *witness = g;
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------- j

Complex j_invariant(const Complex& tau, long bits)
{
    // move into the fundamental domain first; j is SL2(Z)-invariant
    long wb = bits + 16;
    Complex t = tau;
    for (int it = 0; it < 1000; ++it) {
        Real shift(Real(t.re.round(), wb));
        t.re -= shift;
        if (t.norm() < Real(1L, wb)) {
            t = Complex(Real(-1L, wb), Real(wb)) / t;
            continue;
        }
        break;
    }
    Complex E4(wb), E6(wb);
    eisenstein_series(t, wb, E4, E6);
    Complex E43 = E4 * E4 * E4;
    return E43 * Real(1728L, wb) / (E43 - E6 * E6);
}

namespace {

std::mutex j_mu;
QSeries j_cache;

}

QSeries j_series(long T)
{
    std::lock_guard<std::mutex> lock(j_mu);
    if (j_cache.prec() >= T && j_cache.prec() > 0)
        return j_cache.truncate(T);
    long L = std::max(T, 2 * j_cache.prec()) + 2;
    std::vector<Integer> s3(L + 1, 0), s5(L + 1, 0);
    for (long d = 1; d <= L; ++d) {
        Integer d3 = Integer(d) * d * d, d5 = d3 * d * d;
        for (long n = d; n <= L; n += d) {
            s3[n] += d3;
            s5[n] += d5;
        }
    }
    std::vector<Rational> e4(L + 1), e6(L + 1);
    e4[0] = 1;
    e6[0] = 1;
    for (long n = 1; n <= L; ++n) {
        e4[n] = Rational(240 * s3[n]);
        e6[n] = Rational(-504 * s5[n]);
    }
    QSeries E4(1, 0, e4, L + 1), E6(1, 0, e6, L + 1);
    QSeries E43 = E4 * E4 * E4;
    QSeries Delta = (E43 - E6 * E6) * Rational(1, 1728);
    j_cache = E43 / Delta;
    return j_cache.truncate(T);
}

QSeries JRational::expand(long T) const
{
    long dp = static_cast<long>(num.size()) - 1, dq = static_cast<long>(den.size()) - 1;
    long Tj = T + 2 * (std::max(dp, 0L) + std::max(dq, 0L)) + 4;
    QSeries j = j_series(Tj);
    auto horner = [&](const QPoly& p) {
        QSeries r = QSeries::zero(kExact);
        for (size_t i = p.size(); i-- > 0;)
            r = r * j + QSeries::constant(p[i], kExact);
        return r;
    };
    require(!den.empty(), Errc::InvalidArgument, "zero denominator");
    QSeries r = horner(num) / horner(den);
    require(r.prec() >= T, Errc::InsufficientPrecision, "re-expansion lost precision");
    return r.truncate(T);
}

std::string JRational::to_string(const std::string& var) const
{
    auto paren = [&](const QPoly& p) {
        std::string s = poly_to_string(p, var);
        long terms = 0;
        for (auto& c : p)
            terms += c != 0;
        return terms > 1 ? "(" + s + ")" : s;
    };
    if (den.size() == 1 && den[0] == 1)
        return poly_to_string(num, var);
    return paren(num) + "/" + paren(den);
}

JRational j_recognize(const QSeries& s, long degree_bound)
{
    require(s.width() == 1, Errc::InvalidArgument, "j_recognize needs a series in q");
    if (s.is_zero())
        return JRational{{}, {Rational(1)}};
    const long v = s.valuation(), T = s.prec();
    for (long k = 0; k <= degree_bound; ++k) {
        long dp = k - v;
        if (dp < 0)
            continue;
        if (T < 2 * k + 2)
            fail(Errc::InsufficientPrecision, "series known to O(q^" + std::to_string(T) + "), need " +
                                                  std::to_string(2 * k + 2) + " for denominator degree " + std::to_string(k));
        long Tj = T + 2 + std::max(dp, k);
        QSeries j = j_series(Tj);
        std::vector<QSeries> jp{QSeries::constant(Rational(1), kExact)};
        for (long i = 1; i <= std::max(dp, k); ++i)
            jp.push_back(jp.back() * j);
        std::vector<QSeries> sj;
        for (long i = 0; i <= k; ++i)
            sj.push_back(s * jp[i]);
        const long lo = -dp, hi = T - k; // rows n in [lo, hi)
        const long cols = k + dp + 1;
        QMatrix A;
        std::vector<Rational> b;
        for (long n = lo; n < hi; ++n) {
            std::vector<Rational> row(cols);
            for (long i = 0; i < k; ++i)
                row[i] = sj[i].coeff(n);
            for (long i = 0; i <= dp; ++i)
                row[k + i] = -jp[i].coeff(n);
            A.push_back(std::move(row));
            b.push_back(-sj[k].coeff(n));
        }
        auto sol = solve_exact(std::move(A), std::move(b));
        if (!sol.consistent || !sol.unique)
            continue;
        JRational r;
        r.den.assign(sol.x.begin(), sol.x.begin() + k);
        r.den.push_back(Rational(1));
        r.num.assign(sol.x.begin() + k, sol.x.end());
        poly_trim(r.num);
        QPoly g = poly_gcd(r.num, r.den);
        if (g.size() > 1) {
            QPoly q, rem;
            poly_divmod(r.num, g, q, rem);
            r.num = q;
            poly_divmod(r.den, g, q, rem);
            r.den = poly_monic(q);
        }
        return r;
    }
    fail(Errc::NoMatch, "no rational function of j with denominator degree <= " + std::to_string(degree_bound));
}

// ---------------------------------------------------------------- modular functions

std::vector<Mat2> coset_reps(long N)
{
    require(N >= 1, Errc::InvalidArgument, "level must be positive");
    return Gamma0(N).coset_reps();
}

CSeries ModularFunction::coset_expansion(long coset) const
{
    const Gamma0& G = param->group();
    long cusp = G.cusp_of_coset(coset), k = G.offset_of_coset(coset);
    for (auto& p : parts)
        if (p.cusp == cusp)
            return substitute_root_of_unity(p.F, k);
    fail(Errc::ExpansionUndefined, "no expansion for coset " + std::to_string(coset));
}

long ModularFunction::prec_q() const
{
    long best = kExact;
    for (auto& p : parts) {
        long t = p.F.prec();
        best = std::min(best, t >= 0 ? t / p.width : -((-t + p.width - 1) / p.width));
    }
    return best;
}

ModularFunction build_modular_function(const Parametrization& P, const Expr& expr, long lambda, long n_max)
{
    require(P.periods_in_lattice(), Errc::ExpansionUndefined,
            "periods of the newform are not in the lattice of " + P.curve().label + "; X, Y are not modular");
    ModularFunction F;
    F.param = &P;
    F.expr = expr;
    F.lambda = lambda;
    F.n_max = n_max;
    const Gamma0& G = P.group();
    for (size_t rho = 0; rho < G.cusps().size(); ++rho) {
        const CuspData& D = P.cusp_data(static_cast<long>(rho));
        long w = D.width;
        require(D.exact, Errc::ExpansionUndefined,
                "cusp " + G.cusps()[rho].to_string() + " has no exact expansion (not an Atkin-Lehner cusp)");
        CuspExpansion e = P.expand(static_cast<long>(rho), w * n_max + 8, lambda);
        ModularFunction::CuspPart part;
        part.cusp = static_cast<long>(rho);
        part.width = w;
        try {
            part.F = expr.eval<QSeries>(e.X, e.Y, [w](const Rational& c) { return QSeries::constant(c, kExact, w); });
        } catch (const Error& err) {
            if (err.code() != Errc::NonUnitLeadingCoefficient)
                throw;
            fail(Errc::ExpansionUndefined, "expression " + expr.to_string() + " at cusp " + G.cusps()[rho].to_string() +
                                               " (coset " + std::to_string(G.cusps()[rho].cosets.front()) +
                                               "): denominator vanishes to the working order");
        }
        F.parts.push_back(std::move(part));
    }
    return F;
}

namespace {

using SPoly = std::vector<QSeries>; // coefficients of x^0, x^1, ...

SPoly spoly_mul(const SPoly& a, const SPoly& b, long keep_from)
{
    long n = static_cast<long>(a.size() + b.size()) - 2;
    SPoly r(n + 1, QSeries::zero(kExact));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) {
            long d = static_cast<long>(i + j);
            if (d < keep_from)
                continue;
            r[d] += a[i] * b[j];
        }
    return r;
}

// e_1..e_K of the roots from their power sums p[1..K].
std::vector<QSeries> newton_elementary(const std::vector<QSeries>& p, long K)
{
    std::vector<QSeries> e{QSeries::constant(Rational(1), kExact)};
    for (long k = 1; k <= K; ++k) {
        QSeries acc = QSeries::zero(kExact);
        for (long i = 1; i <= k; ++i) {
            QSeries t = e[k - i] * p[i];
            if (i % 2 == 1)
                acc += t;
            else
                acc -= t;
        }
        e.push_back(acc * Rational(1, k));
    }
    return e;
}

}

std::vector<QSeries> modular_polynomial(const ModularFunction& F, long kmax)
{
    const long n = F.index();
    if (kmax < 0 || kmax > n)
        kmax = n;
    SPoly total{QSeries::constant(Rational(1), kExact)};
    for (auto& part : F.parts) {
        long w = part.width;
        long K = std::min(w, kmax);
        std::vector<QSeries> p{QSeries::zero(kExact)};
        QSeries pw = QSeries::constant(Rational(1), kExact, w);
        for (long r = 1; r <= K; ++r) {
            pw = pw * part.F;
            p.push_back(pw.filter(w) * Rational(w));
        }
        auto e = newton_elementary(p, K);
        // orbit polynomial sum_k (-1)^k e_k x^(w-k), top K+1 coefficients
        SPoly orb(w + 1, QSeries::zero(kExact));
        for (long k = 0; k <= K; ++k)
            orb[w - k] = k % 2 ? e[k] * Rational(-1) : e[k];
        long deg = static_cast<long>(total.size()) - 1 + w;
        total = spoly_mul(total, orb, deg - kmax);
    }
    require(static_cast<long>(total.size()) == n + 1, Errc::CosetDecompositionFailed,
            "cusp widths do not add up to the index");
    for (long i = 0; i < n - kmax; ++i)
        total[i] = QSeries::zero(0);
    return total;
}

std::vector<QSeries> power_sums_direct(const ModularFunction& F, long rmax)
{
    const Gamma0& G = F.param->group();
    std::vector<QSeries> out(rmax + 1, QSeries::zero(kExact));
    for (auto& part : F.parts) {
        const CuspInfo& C = G.cusps()[part.cusp];
        long w = part.width;
        std::vector<CSeries> sums;
        for (long k = 0; k < w; ++k) {
            long coset = C.cosets[k];
            CSeries s = F.coset_expansion(coset);
            CSeries pw = s;
            for (long r = 1; r <= rmax; ++r) {
                if (r > 1)
                    pw = pw * s;
                if (static_cast<long>(sums.size()) < r)
                    sums.push_back(pw);
                else
                    sums[r - 1] += pw;
            }
        }
        for (long r = 1; r <= rmax; ++r) {
            QSeries q = to_rational(sums[r - 1]);
            for (long m = q.valuation(); m < q.prec(); ++m)
                if (m % w != 0 && q.coeff(m) != 0)
                    fail(Errc::GaloisResidue, "orbit power sum has a non-integral exponent q^(" + std::to_string(m) + "/" +
                                                  std::to_string(w) + ")");
            out[r] += q.filter(w);
        }
    }
    return out;
}

std::vector<QSeries> power_sums_from_coefficients(const std::vector<QSeries>& A, long rmax)
{
    long n = static_cast<long>(A.size()) - 1;
    auto e = [&](long k) {
        if (k > n)
            return QSeries::zero(kExact);
        return k % 2 ? A[n - k] * Rational(-1) : A[n - k];
    };
    std::vector<QSeries> p{QSeries::zero(kExact)};
    for (long r = 1; r <= rmax; ++r) {
        QSeries acc = e(r) * Rational(r % 2 ? r : -r);
        for (long i = 1; i < r; ++i) {
            QSeries t = e(i) * p[r - i];
            if (i % 2 == 1)
                acc += t;
            else
                acc -= t;
        }
        p.push_back(acc);
    }
    return p;
}

long default_degree_bound(long N) { return gamma0_index(N) / 6 + 2; }

std::vector<JRational> recognize_coefficients(const Parametrization& P, const Expr& expr, std::vector<long> which,
                                              long degree_bound, long lambda)
{
    const long n = P.group().index();
    if (which.empty())
        for (long i = 0; i < n; ++i)
            which.push_back(i);
    long bound = degree_bound > 0 ? degree_bound : default_degree_bound(P.group().level());
    long kmax = n - *std::min_element(which.begin(), which.end());
    long n_max = 2 * bound + 12;
    for (int attempt = 0; attempt < 12; ++attempt) {
        long target = 2 * bound + 4;
        ModularFunction F = build_modular_function(P, expr, lambda, n_max);
        auto A = modular_polynomial(F, kmax);
        long have = kExact;
        for (long i : which)
            have = std::min(have, A[i].prec());
        if (have < target) {
            n_max += target - have + 4;
            continue;
        }
        std::vector<JRational> out;
        try {
            for (long i : which)
                out.push_back(j_recognize(A[i], bound));
            return out;
        } catch (const Error& e) {
            if (e.code() == Errc::NoMatch && degree_bound <= 0 && bound < 4 * n) {
                bound *= 2;
                n_max += 2 * bound;
                continue;
            }
            if (e.code() == Errc::InsufficientPrecision) {
                n_max += 2 * bound;
                continue;
            }
            throw;
        }
    }
    fail(Errc::InsufficientPrecision, "could not reach the precision needed to recognize the coefficients");
}

// ---------------------------------------------------------------- divisors

long Divisor::degree() const
{
    long d = 0;
    for (auto& c : cusps)
        d += c.order;
    for (auto& p : places)
        d += (static_cast<long>(p.minpoly.size()) - 1) * (p.zeros - p.poles);
    return d;
}

long Divisor::pole_count() const
{
    long d = 0;
    for (auto& c : cusps)
        d += std::max(0L, -c.order);
    for (auto& p : places)
        d += (static_cast<long>(p.minpoly.size()) - 1) * p.poles;
    return d;
}

QPoly Divisor::pole_polynomial() const
{
    QPoly r{Rational(1)};
    for (auto& p : places)
        if (p.poles > 0)
            r = poly_mul(r, p.minpoly);
    return r;
}

Divisor divisor_of(const ModularFunction& F, long degree_bound)
{
    const Parametrization& P = *F.param;
    const Gamma0& G = P.group();
    Divisor D;
    D.coefficients = recognize_coefficients(P, F.expr, {}, degree_bound, F.lambda);
    for (auto& part : F.parts) {
        require(!part.F.is_zero(), Errc::ExpansionUndefined, "function vanishes to the working order at a cusp");
        D.cusps.push_back({part.cusp, G.cusps()[part.cusp].to_string(), part.F.valuation()});
    }
    const long n = G.index();
    std::vector<QPoly> candidates;
    auto add_factors = [&](const QPoly& p) {
        if (p.size() <= 1)
            return;
        for (auto& f : factor_over_q(p)) {
            bool seen = false;
            for (auto& c : candidates)
                seen = seen || c == f.f;
            if (!seen)
                candidates.push_back(f.f);
        }
    };
    for (auto& a : D.coefficients)
        add_factors(a.den);
    require(!D.coefficients[0].num.empty(), Errc::ExpansionUndefined, "norm of the function vanishes identically");
    add_factors(D.coefficients[0].num);
    for (auto& h : candidates) {
        long lowest = 0;
        for (long i = 0; i < n; ++i) {
            auto& a = D.coefficients[i];
            if (a.num.empty())
                continue;
            long o = poly_multiplicity(a.num, h) - poly_multiplicity(a.den, h);
            lowest = std::min(lowest, o);
        }
        long norm_ord = poly_multiplicity(D.coefficients[0].num, h) - poly_multiplicity(D.coefficients[0].den, h);
        Place pl;
        pl.minpoly = h;
        pl.irreducible = true;
        for (auto& f : factor_over_q(h))
            pl.irreducible = pl.irreducible && f.irreducible && f.f == h;
        pl.poles = -lowest;
        pl.zeros = norm_ord + pl.poles;
        if (pl.poles || pl.zeros)
            D.places.push_back(pl);
    }
    return D;
}

// ---------------------------------------------------------------- CM points and preimages

namespace {

Complex reduce_tau(Complex t)
{
    long wb = t.bits();
    for (int it = 0; it < 1000; ++it) {
        t.re -= Real(t.re.round(), wb);
        if (t.norm() < Real(1L, wb) - ldexp(Real(1L, wb), -(wb - 8))) {
            t = Complex(Real(-1L, wb), Real(wb)) / t;
            continue;
        }
        break;
    }
    return t;
}

bool recognize_quadratic(const Complex& tau, long bits, QuadPoint& out)
{
    long wb = tau.bits();
    Real x2 = tau.re * Real(2L, wb), n = tau.norm();
    Real tol = ldexp(Real(1L, wb), -(bits / 3));
    for (long a = 1; a <= 100000; ++a) {
        Real B = x2 * Real(a, wb), C = n * Real(a, wb);
        Integer bi = B.round(), ci = C.round();
        if (abs(B - Real(bi, wb)) < tol && abs(C - Real(ci, wb)) < tol) {
            Integer b = -bi;
            if (b * b - 4 * Integer(a) * ci >= 0)
                return false;
            out = QuadPoint::from_form(a, b, ci);
            return true;
        }
    }
    return false;
}

// Solves j(tau) = j0 by Newton's method from a few starting points.
bool invert_j(const Complex& j0, long bits, Complex& tau)
{
    long wb = bits + 64;
    Real eps = ldexp(Real(1L, wb), -(bits - 8));
    std::vector<Complex> starts;
    if (j0.abs() > Real(20000L, wb)) {
        Complex q = Complex::one(wb) / (j0 - Complex(Real(744L, wb)));
        Complex two_pi_i(Real(wb), Real::pi(wb) * Real(2L, wb));
        starts.push_back(reduce_tau(log(q) / two_pi_i));
    }
    for (double x : {0.0, -0.3, 0.3, -0.45, 0.45})
        for (double y : {0.95, 1.2, 1.6, 2.2})
            starts.push_back(Complex(Real(x, wb), Real(y, wb)));
    Complex two_pi_i(Real(wb), Real::pi(wb) * Real(2L, wb));
    for (auto t : starts) {
        bool ok = false;
        for (int it = 0; it < 200; ++it) {
            Complex E4(wb), E6(wb);
            eisenstein_series(t, wb, E4, E6);
            Complex E43 = E4 * E4 * E4;
            Complex j = E43 * Real(1728L, wb) / (E43 - E6 * E6);
            Complex dj = Complex(Real(wb), Real(wb)) - two_pi_i * E6 / E4 * j;
            Complex step = (j - j0) / dj;
            t -= step;
            if (t.im.sign() <= 0)
                break;
            t = reduce_tau(t);
            if (step.abs() < eps) {
                ok = true;
                break;
            }
        }
        if (ok && (j_invariant(t, wb) - j0).abs() < ldexp(max(Real(1L, wb), j0.abs()), -(bits / 2))) {
            tau = t;
            return true;
        }
    }
    return false;
}

// Coset representatives preferring the identity, then (0, -1; 1, j), then small bottom rows.
std::vector<Mat2> display_reps(const Gamma0& G)
{
    const long N = G.level(), n = G.index();
    std::vector<Mat2> reps(n);
    std::vector<char> have(n, 0);
    long filled = 0;
    auto offer = [&](const Mat2& g) {
        long i = G.coset_of(g);
        if (!have[i]) {
            have[i] = 1;
            reps[i] = g;
            ++filled;
        }
    };
    offer(Mat2{});
    for (long j = -((N - 1) / 2); j <= N / 2; ++j)
        offer(Mat2{0, -1, 1, j});
    for (long s = 1; filled < n && s <= 2 * N; ++s)
        for (long c = 0; c <= s; ++c)
            for (long d = -s; d <= s; ++d)
                if ((c == s || std::labs(d) == s) && gcd_long(c, d) == 1)
                    offer(complete_bottom_row(c, d));
    for (long i = 0; i < n; ++i)
        if (!have[i])
            reps[i] = G.coset_reps()[i];
    return reps;
}

bool matches(const Parametrization& P, const PreimageTarget& target, const Complex& X, const Complex& Y, long bits)
{
    long wb = X.bits();
    Real tol = ldexp(Real(1L, wb), -(bits / 2));
    if (auto pt = std::get_if<Point>(&target)) {
        if (pt->infinity)
            return false;
        Complex dx = X - Complex(Real(pt->x, wb)), dy = Y - Complex(Real(pt->y, wb));
        return dx.abs() < tol * max(Real(1L, wb), abs(Real(pt->x, wb))) &&
               dy.abs() < tol * max(Real(1L, wb), abs(Real(pt->y, wb)));
    }
    const Expr& F = std::get<Expr>(target);
    Expr inv = Expr::constant(1) / F;
    Complex v = inv.eval<Complex>(X, Y, [wb](const Rational& c) { return Complex(Real(c, wb)); });
    (void)P;
    return v.abs() < tol;
}

}

std::vector<QuadPoint> cm_points(const QPoly& j_poly, long bits)
{
    std::vector<QuadPoint> out;
    auto p = j_poly;
    poly_trim(p);
    require(p.size() >= 2, Errc::InvalidArgument, "j polynomial must have positive degree");
    for (auto& j0 : poly_roots(p, bits + 64)) {
        long wb = bits + 64;
        QuadPoint z;
        Complex tau(wb);
        Real tiny = ldexp(Real(1L, wb), -(bits / 2));
        if (j0.abs() < tiny)
            z = QuadPoint{1, 1, 1};
        else if ((j0 - Complex(Real(1728L, wb))).abs() < tiny)
            z = QuadPoint{1, 0, 1};
        else if (!invert_j(j0, bits, tau) || !recognize_quadratic(tau, bits, z))
            continue;
        Mat2 R;
        z = reduce_quad(z, R);
        bool seen = false;
        for (auto& y : out)
            seen = seen || y == z;
        if (!seen)
            out.push_back(z);
    }
    if (out.empty())
        fail(Errc::NoPreimageFound, "no root of " + poly_to_string(j_poly, "j") + " is a CM j-invariant of a small order");
    return out;
}

std::vector<Preimage> preimage_search(const Parametrization& P, const QPoly& j_poly, const PreimageTarget& target, long bits)
{
    const EllipticCurve& E = P.curve();
    auto taus = cm_points(j_poly, bits);
    auto reps = display_reps(P.group());
    PeriodLattice L1 = bits == P.bits() ? P.lattice() : period_lattice(E, bits);
    PeriodLattice L2 = period_lattice(E, 2 * bits);
    std::vector<Preimage> out;
    for (auto& tau : taus) {
        for (size_t i = 0; i < reps.size(); ++i) {
            QuadPoint z = tau.transform(reps[i]);
            Complex X(bits), Y(bits);
            P.phi(z.value(bits + 32), bits, X, Y, &L1);
            if (!matches(P, target, X, Y, bits))
                continue;
            Complex X2(2 * bits), Y2(2 * bits);
            P.phi(z.value(2 * bits + 32), 2 * bits, X2, Y2, &L2);
            if (!matches(P, target, X2, Y2, 2 * bits))
                continue;
            long N = P.group().level();
            auto same = std::find_if(out.begin(), out.end(),
                                     [&](const Preimage& o) { return gamma0_equivalent(o.z, z, N); });
            if (same == out.end())
                out.push_back({z, reps[i], static_cast<long>(i), X2, Y2});
            else if (z.a < same->z.a)
                *same = {z, reps[i], static_cast<long>(i), X2, Y2};
        }
    }
    if (out.empty())
        fail(Errc::NoPreimageFound, "no coset maps the CM points above " + poly_to_string(j_poly, "j") + " to the target");
    return out;
}

// ---------------------------------------------------------------- Atkin-Lehner

Point atkin_lehner_point(const Parametrization& P, long Q, const Point& p)
{
    const EllipticCurve& E = P.curve();
    const CuspData& D = P.cusp_data(P.group().al_cusp(Q));
    Point r = D.al_sign == 1 ? p : negate(E, p);
    return add(E, D.pole ? Point::at_infinity() : D.point, r);
}

Expr atkin_lehner_expr(const Parametrization& P, long Q, const Expr& F)
{
    const EllipticCurve& E = P.curve();
    const CuspData& D = P.cusp_data(P.group().al_cusp(Q));
    auto k = [](const Rational& c) { return Expr::constant(c); };
    Expr X = Expr::var_x(), Y = Expr::var_y();
    Expr Xr = X, Yr = Y;
    if (D.al_sign == -1)
        Yr = -Y - k(E.a1) * X - k(E.a3);
    if (D.pole)
        return F.substitute(Xr, Yr);
    Expr x0 = k(D.point.x), y0 = k(D.point.y);
    Expr s = (Yr - y0) / (Xr - x0);
    Expr nu = y0 - s * x0;
    Expr X3 = s * s + k(E.a1) * s - k(E.a2) - Xr - x0;
    Expr Y3 = -(s + k(E.a1)) * X3 - nu - k(E.a3);
    return F.substitute(X3, Y3);
}

ModularFunction atkin_lehner_apply(const ModularFunction& F, long Q)
{
    return build_modular_function(*F.param, atkin_lehner_expr(*F.param, Q, F.expr), F.lambda, F.n_max);
}

bool atkin_lehner_fixes(long N, long m, const QuadPoint& z)
{
    Gamma0 G(N);
    Mat2 W = G.atkin_lehner(m);
    Mat2 R;
    return reduce_quad(z, R) == reduce_quad(z.transform(W), R);
}

bool atkin_lehner_fixes_point(long N, long m, const QuadPoint& z)
{
    Gamma0 G(N);
    Mat2 W = G.atkin_lehner(m);
    return gamma0_equivalent(z, z.transform(W), N);
}

CMVerdict cm_criterion(const QuadPoint& z, long m, bool fixed)
{
    CMVerdict v;
    v.m = m;
    v.fixed = fixed;
    if (!fixed) {
        v.note = "W_" + std::to_string(m) + " changes the isomorphism class: the isogeny alternative applies";
        return v;
    }
    v.D = z.discriminant();
    if (!(v.D < 0 && v.D >= -4 * Integer(m)))
        fail(Errc::CriterionViolated, "discriminant " + v.D.get_str() + " outside [-4m, 0) for m = " + std::to_string(m));
    long D = to_long(v.D), M = 4 * m;
    for (long s = 0; s <= 2 * m; ++s)
        if (mod_long(s * s - D, M) == 0) {
            v.witness = s;
            break;
        }
    if (v.witness < 0)
        fail(Errc::CriterionViolated, "discriminant " + v.D.get_str() + " is not a square mod " + std::to_string(M));
    v.note = "fixed by W_" + std::to_string(m) + ": CM point of discriminant " + v.D.get_str();
    return v;
}

// ---------------------------------------------------------------- modular degree

long modular_degree_divisor(const Parametrization& P)
{
    ModularFunction F = build_modular_function(P, Expr::var_x(), 1, 8);
    Divisor D = divisor_of(F);
    long poles = D.pole_count();
    require(poles % 2 == 0 && poles > 0, Errc::PrecisionUnreachable,
            "pole count of X is " + std::to_string(poles) + ", expected a positive even number");
    return poles / 2;
}

namespace {

using cd = std::complex<double>;

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w)
{
    x.assign(n, 0);
    w.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1);
            double dt = p1 / dp;
            t -= dt;
            if (std::fabs(dt) < 1e-16)
                break;
        }
        double p0 = 1, p1 = t;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1);
        x[i] = t;
        w[i] = 2 / ((1 - t * t) * dp * dp);
    }
}

class NewformDouble {
public:
    explicit NewformDouble(const Parametrization& P) : P_(P), N_(P.group().level()) { grow(256); }

    // f(z) in double precision after moving z up by Gamma0(N).
    cd operator()(cd z)
    {
        cd factor = 1;
        for (int it = 0; it < 200; ++it) {
            double x = z.real(), y = z.imag();
            double best = 0.98;
            long bc = 0, bd = 0;
            for (long c = N_; c * y < 1; c += N_) {
                long d0 = std::lround(-c * x);
                for (long d = d0 - 1; d <= d0 + 1; ++d) {
                    if (gcd_long(c, d) != 1)
                        continue;
                    double re = c * x + d, im = c * y;
                    double n2 = re * re + im * im;
                    if (n2 < best) {
                        best = n2;
                        bc = c;
                        bd = d;
                    }
                }
            }
            if (bc == 0)
                break;
            Mat2 g = complete_bottom_row(bc, bd);
            cd j = double(bc) * z + double(bd);
            factor /= j * j; // f(z) = f(g z) / (c z + d)^2
            z = (double(g.a) * z + double(g.b)) / j;
        }
        double y = z.imag();
        long M = static_cast<long>(std::ceil(45.0 / (2 * M_PI * y))) + 8;
        if (M > static_cast<long>(a_.size()) - 1)
            grow(2 * M);
        cd q = std::exp(cd(0, 2 * M_PI) * z);
        cd s = 0;
        for (long n = M; n >= 1; --n)
            s = (s + a_[n]) * q;
        return s * factor;
    }

private:
    const Parametrization& P_;
    long N_;
    std::vector<double> a_;

    void grow(long M)
    {
        auto f = P_.newform(M);
        a_.assign(f.size() + 1, 0.0);
        for (long n = 1; n <= f.size(); ++n)
            a_[n] = static_cast<double>(f[n]);
    }
};

}

double modular_degree_area(const Parametrization& P)
{
    require(P.periods_in_lattice(), Errc::ExpansionUndefined, "periods not in the lattice: no parametrization of this curve");
    const Gamma0& G = P.group();
    NewformDouble f(P);
    std::vector<double> gx, gw, hx, hw;
    gauss_legendre(24, gx, gw);
    gauss_legendre(12, hx, hw);
    auto slash = [&](const Mat2& g, cd w) {
        cd j = double(g.c) * w + double(g.d);
        cd z = (double(g.a) * w + double(g.b)) / j;
        return f(z) / (j * j);
    };
    double total = 0;
    for (const CuspInfo& C : G.cusps()) {
        const long w = C.width;
        // below Im = 1: the part of each translate of the standard domain under the line
        for (long k = 0; k < w; ++k) {
            Mat2 g = C.gamma * translation(k);
            for (size_t i = 0; i < gx.size(); ++i) {
                double u = 0.5 * gx[i];
                double v0 = std::sqrt(1 - u * u), len = 1 - v0;
                for (size_t l = 0; l < hx.size(); ++l) {
                    double v = v0 + 0.5 * len * (hx[l] + 1);
                    double val = std::norm(slash(g, cd(u, v)));
                    total += 0.5 * gw[i] * 0.5 * len * hw[l] * val;
                }
            }
        }
        // above Im = 1: the strip of width w, by Parseval on sampled Fourier coefficients
        long M = 8 * w + 32;
        std::vector<cd> samples(M);
        for (long s = 0; s < M; ++s)
            samples[s] = slash(C.gamma, cd(double(w) * s / M - 0.5, 1.0));
        for (long n = 1; n < M / 2; ++n) {
            cd c = 0;
            for (long s = 0; s < M; ++s)
                c += samples[s] * std::exp(cd(0, -2 * M_PI * double(n) * s / M));
            c /= double(M);
            // c = c_n exp(-2 pi n / w) exp(-pi i n / w)
            double t = std::norm(c) * double(w) * w / (4 * M_PI * n);
            total += t;
        }
    }
    double area = P.lattice().area().to_double();
    return 4 * M_PI * M_PI * total / area;
}

long modular_degree(const Parametrization& P)
{
    if (P.curve().degree_override)
        return *P.curve().degree_override;
    const Gamma0& G = P.group();
    bool exact = true;
    for (size_t i = 0; i < G.cusps().size(); ++i)
        exact = exact && P.cusp_data(static_cast<long>(i)).exact;
    if (exact && G.index() <= 72)
        return modular_degree_divisor(P);
    double d = modular_degree_area(P);
    long r = std::lround(d);
    require(r >= 1 && std::fabs(d - r) < 1e-6 * std::max(1.0, d), Errc::PrecisionUnreachable,
            "Petersson norm gives " + std::to_string(d) + ", not an integer");
    return r;
}

}
