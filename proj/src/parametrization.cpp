#include "modparam/param.hpp"

#include "modparam/error.hpp"

#include <cmath>

namespace modparam {

namespace {

Complex at(long re_num, long re_den, const Real& im, long bits)
{
    return Complex(Real(frac(re_num, re_den), bits), im);
}

QSeries al_slash(const NewformCoefficients& f, long Q, long sign, long T)
{
    std::vector<Rational> c;
    for (long n = 1; n < T; ++n)
        c.push_back(frac(f.manin * sign * f[n], Q));
    return QSeries(Q, 1, c, T);
}

}

Parametrization::Parametrization(const EllipticCurve& E, long bits)
    : E_(E), bits_(bits), G_(E.conductor), L_(period_lattice(E, bits))
{
    require(E.conductor > 0, Errc::InvalidArgument, "conductor is required for a parametrization");
    require(E.manin == 1, Errc::InvalidArgument, "parametrizations at cusps assume Manin constant 1");
    f_ = newform_coefficients(E_, 64);
    periods_in_lattice_ = check_periods();
}

// C(h) for the Schreier generators r_i s r_j^-1 (s = S, T) of Gamma0(N) must lie in the
// lattice of E; otherwise eps mod Lambda is not invariant and only the expansion at
// infinity is meaningful.
Complex Parametrization::eps_locked(const Complex& z, long bits, const PeriodLattice* L) const
{
    while (true) {
        try {
            return eichler_integral(f_, L ? *L : L_, z, bits);
        } catch (const Error& e) {
            if (e.code() != Errc::ConvergenceBudgetExceeded || f_.size() > 2000000)
                throw;
            newform_locked(2 * f_.size());
        }
    }
}

Complex Parametrization::eichler(const Complex& z, long bits, const PeriodLattice* L) const
{
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return eps_locked(z, bits, L);
}

void Parametrization::phi(const Complex& z, long bits, Complex& X, Complex& Y, const PeriodLattice* L) const
{
    const PeriodLattice& lat = L ? *L : L_;
    Complex e = eichler(z, bits, &lat);
    Complex p(bits), dp(bits);
    wp_both(lat, e, p, dp);
    long wb = lat.bits;
    auto c = [&](const Rational& r) { return Complex(Real(r, wb)); };
    X = p - c(E_.b2 / 12);
    Y = (dp - c(E_.a1) * X - c(E_.a3)) * Real(0.5, wb);
}

bool Parametrization::check_periods() const
{
    const long bits = 64;
    const long N = G_.level();
    const Mat2 S{0, -1, 1, 0}, T = translation(1);
    for (const Mat2& r : G_.coset_reps()) {
        for (const Mat2& s : {S, T}) {
            Mat2 g = r * s;
            Mat2 h = g * G_.coset_reps()[G_.coset_of(g)].adjugate();
            if (h.c == 0)
                continue;
            long ac = std::labs(h.c);
            Complex z(Real(frac(-h.d, h.c), bits + 32), Real(frac(1, ac), bits + 32));
            Complex w = h.apply(z);
            try {
                snap_to_lattice(L_, eps_locked(w, bits) - eps_locked(z, bits), bits);
            } catch (const Error& e) {
                if (e.code() != Errc::LatticeSnapFailed)
                    throw;
                return false;
            }
        }
    }
    return true;
}

NewformCoefficients Parametrization::newform_locked(long n) const
{
    if (f_.size() < n)
        f_ = newform_coefficients(E_, std::max(n, 2 * f_.size()));
    return f_;
}

NewformCoefficients Parametrization::newform(long n) const
{
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return newform_locked(n);
}

const CuspData& Parametrization::cusp_data(long cusp) const
{
    std::lock_guard<std::recursive_mutex> lock(mu_);
    require(cusp >= 0 && cusp < static_cast<long>(G_.cusps().size()), Errc::InvalidArgument,
            "no cusp with index " + std::to_string(cusp));
    auto it = data_.find(cusp);
    if (it != data_.end())
        return *it->second;
    auto D = std::make_unique<CuspData>();
    D->index = cusp;
    D->info = G_.cusps()[cusp];
    D->width = D->info.width;
    D->al_q = D->info.al_q;
    require(cusp == G_.cusp_index_infinity() || periods_in_lattice_, Errc::ExpansionUndefined,
            "periods of the newform are not in the lattice of " + (E_.label.empty() ? std::string("the curve") : E_.label) +
                "; only the expansion at infinity is defined");
    if (D->al_q > 0)
        compute_al(*D);
    else
        compute_numeric(*D);
    const CuspData& ref = *D;
    data_[cusp] = std::move(D);
    return ref;
}

void Parametrization::compute_al(CuspData& D) const
{
    const long Q = D.al_q;
    const long N = G_.level();
    D.exact = true;
    D.info.gamma = G_.gamma_q(Q);
    if (Q == 1) {
        D.al_sign = 1;
        D.kappa = Complex(bits_);
        D.pole = true;
        D.point = Point::at_infinity();
        D.slash = al_slash(newform_locked(64), 1, 1, 64);
        return;
    }
    const Mat2 g = D.info.gamma;
    const long c = N / Q, d = Q;
    const long wb = bits_ + 32;
    // Balance point: Im(g z1) = Im(z1 / Q) = 1 / (c sqrt Q).
    Real y1 = sqrt(Real(Q, wb)) / Real(c, wb);
    Complex z1 = at(-d, c, y1, wb);
    Complex z2 = z1 + Complex(Real(frac(1, 3 * c), wb));
    double im_min = 0.8 / (c * std::sqrt(static_cast<double>(Q)) + 1.0 / (9 * c));
    NewformCoefficients f = newform_locked(eichler_terms_needed(im_min, wb) + 16);
    Complex qi = Complex(Real(frac(1, Q), wb));

    auto offset = [&](const Complex& z, long s, long b) {
        Complex e = eichler_direct(f, g.apply(z), b);
        Complex t = eichler_direct(f, z * qi, b);
        return s > 0 ? e - t : e + t;
    };
    long sign = 0;
    Real best(64), other(64);
    for (long s : {1L, -1L}) {
        Real diff = (offset(z1, s, 64) - offset(z2, s, 64)).abs();
        if (sign == 0 || diff < best) {
            if (sign != 0)
                other = best;
            best = diff;
            sign = s;
        } else {
            other = diff;
        }
    }
    require(best.exponent() < -40 && other.exponent() > -10, Errc::ReconstructionFailed,
            "Atkin-Lehner sign at Q = " + std::to_string(Q) + " is not determined numerically");
    long expected = 1;
    bool squarefree_q = true;
    for (long p : prime_factors(Q)) {
        if ((N / p) % p == 0)
            squarefree_q = false;
        else
            expected *= -f[p];
    }
    if (squarefree_q)
        require(expected == sign, Errc::ReconstructionFailed,
                "numerical Atkin-Lehner sign disagrees with -a_p at Q = " + std::to_string(Q));
    D.al_sign = sign;
    D.kappa = offset(z1, sign, wb);
    D.slash = al_slash(f, Q, sign, 64);
    classify_kappa(D);
}

void Parametrization::compute_numeric(CuspData& D) const
{
    D.exact = false;
    D.al_sign = 0;
}

void Parametrization::classify_kappa(CuspData& D) const
{
    Real x(bits_), y(bits_);
    L_.coordinates(D.kappa, x, y);
    Real tol = ldexp(Real(1L, bits_), -bits_ / 2);
    try {
        D.kappa_x = rational_reconstruct(x, 64, tol);
        D.kappa_y = rational_reconstruct(y, 64, tol);
    } catch (const Error&) {
        fail(Errc::ReconstructionFailed, "value at cusp " + D.info.to_string() + " is not a torsion point");
    }
    D.kappa_x -= Rational(floor_div(D.kappa_x.get_num(), D.kappa_x.get_den()));
    D.kappa_y -= Rational(floor_div(D.kappa_y.get_num(), D.kappa_y.get_den()));
    if (D.kappa_x == 0 && D.kappa_y == 0) {
        D.pole = true;
        D.point = Point::at_infinity();
        return;
    }
    D.pole = false;
    Complex p(bits_), dp(bits_);
    wp_both(L_, D.kappa, p, dp);
    const long m = E_.manin;
    Real m_(m, bits_);
    Complex X = p * (m_ * m_) - Complex(Real(E_.b2 / 12, bits_));
    Complex Y = dp * (m_ * m_ * m_) - X * Real(E_.a1, bits_) - Complex(Real(E_.a3, bits_));
    Y *= Real(frac(1, 2), bits_);
    auto recon = [&](const Complex& v) {
        Real t = tol * max(Real(1L, bits_), abs(v.re));
        require(abs(v.im) < t, Errc::ReconstructionFailed, "value at cusp " + D.info.to_string() + " is not real");
        return rational_reconstruct(v.re, Integer(1000000), t);
    };
    Point P;
    try {
        P = Point::affine(recon(X), recon(Y));
    } catch (const Error& e) {
        if (e.code() == Errc::ReconstructionFailed)
            throw;
        fail(Errc::ReconstructionFailed, "value at cusp " + D.info.to_string() + " is not a rational point");
    }
    require(on_curve(E_, P), Errc::ReconstructionFailed, "reconstructed cusp value is not on the curve");
    long order = lcm_long(D.kappa_x.get_den().get_si(), D.kappa_y.get_den().get_si());
    require(torsion_order(E_, P, 64) == order, Errc::ReconstructionFailed,
            "torsion order of the cusp value disagrees with its lattice coordinates");
    D.point = P;
}

CuspExpansion Parametrization::expand(long cusp, long T, long lambda) const
{
    std::lock_guard<std::recursive_mutex> lock(mu_);
    require(lambda == 1 || lambda == -1, Errc::InvalidArgument, "only lambda = 1 or -1 is supported");
    const CuspData& D = cusp_data(cusp);
    require(D.exact, Errc::InvalidArgument, "cusp " + D.info.to_string() + " has no rational expansion");
    auto it = cache_.find({cusp, lambda});
    if (it != cache_.end() && it->second->X.prec() >= T) {
        CuspExpansion e = *it->second;
        e.X = e.X.truncate(T);
        e.Y = e.Y.truncate(T);
        e.slash = e.slash.truncate(T + 4);
        return e;
    }
    const long w = D.width;
    const long Q = D.al_q;
    CuspExpansion e;
    e.cusp = cusp;
    e.width = w;
    e.gamma = D.info.gamma;
    e.lambda = lambda;
    e.slash = al_slash(newform_locked(T + 8), Q, D.al_sign, T + 8);
    const Rational c1 = e.slash.coeff(1) / E_.manin;
    Rational x0 = D.pole ? Rational(0) : D.point.x, y0 = D.pole ? Rational(0) : D.point.y;
    long seed_order = 0;
    if (c1 == 0) {
        e.kind = RecursionCase::Composition;
    } else if (D.pole) {
        e.kind = RecursionCase::Pole;
        Rational t = 3 * c1 * c1 * c1 * w * w * w;
        Integer n_star = floor_div(-t.get_num(), t.get_den());
        n_star = -n_star;
        long S = std::max(3L, n_star.get_si() + 1);
        e.seeds = S;
        seed_order = S - 2;
    } else if (2 * y0 + E_.a1 * x0 + E_.a3 == 0) {
        e.kind = RecursionCase::TwoTorsion;
        e.seeds = 5;
        seed_order = 3;
    } else {
        e.kind = RecursionCase::Regular;
        e.seeds = 2;
        seed_order = 1;
    }
    if (e.kind == RecursionCase::Composition || T <= seed_order) {
        compose_expansion<Rational>(E_, E_.manin, e.slash, D.pole, x0, y0, e.X, e.Y, T);
    } else {
        if (e.kind == RecursionCase::Regular) {
            e.X = QSeries::constant(x0, 1);
            e.Y = QSeries::constant(y0, 1);
        } else {
            compose_expansion<Rational>(E_, E_.manin, e.slash, D.pole, x0, y0, e.X, e.Y, seed_order);
        }
        run_recursion<Rational>(E_, E_.manin, e.slash, e.kind, e.seeds, e.X, e.Y, T);
    }
    e.slash = e.slash.truncate(T + 4);
    cache_[{cusp, lambda}] = std::make_shared<CuspExpansion>(e);
    return e;
}

CuspExpansionC Parametrization::expand_cyclotomic(long cusp, long T, long lambda) const
{
    const CuspData& D = cusp_data(cusp);
    require(D.exact, Errc::InvalidArgument, "cusp " + D.info.to_string() + " has no exact slash data");
    CuspExpansion e = expand(cusp, T, lambda);
    CuspExpansionC out;
    out.cusp = e.cusp;
    out.width = e.width;
    out.gamma = e.gamma;
    out.lambda = e.lambda;
    out.kind = e.kind;
    out.seeds = e.seeds;
    out.slash = to_cyclotomic(e.slash, e.width);
    out.X = to_cyclotomic(e.X, e.width);
    out.Y = to_cyclotomic(e.Y, e.width);
    return out;
}

CuspExpansion expand_infinity(const EllipticCurve& E, const NewformCoefficients& f, long n_max)
{
    require(f.size() >= n_max + 4, Errc::InsufficientPrecision, "need a_n up to n_max + 4");
    QSeries slash = al_slash(f, 1, 1, n_max + 5);
    CuspExpansion e;
    e.slash = slash;
    e.kind = RecursionCase::Pole;
    Rational c1 = slash.coeff(1) / f.manin;
    require(c1 != 0, Errc::ExpansionUndefined, "a_1 vanishes");
    Rational t = 3 * c1 * c1 * c1;
    Integer n_star = -floor_div(-t.get_num(), t.get_den());
    e.seeds = std::max(3L, n_star.get_si() + 1);
    long seed_order = e.seeds - 2;
    if (n_max <= seed_order) {
        compose_expansion<Rational>(E, f.manin, slash, true, Rational(0), Rational(0), e.X, e.Y, n_max);
        return e;
    }
    compose_expansion<Rational>(E, f.manin, slash, true, Rational(0), Rational(0), e.X, e.Y, seed_order);
    run_recursion<Rational>(E, f.manin, slash, RecursionCase::Pole, e.seeds, e.X, e.Y, n_max);
    return e;
}

CuspData slash_f_at_cusp(const Parametrization& P, long cusp) { return P.cusp_data(cusp); }

CuspExpansion expand_cusp(const Parametrization& P, long cusp, long n_max, long lambda)
{
    return P.expand(cusp, n_max, lambda);
}

CosetSeries act_coset(const Gamma0& G, const CuspExpansion& e, const Mat2& g)
{
    Gamma0::Decomposition dec = G.decompose(g);
    require(dec.cusp == e.cusp, Errc::InvalidArgument, "matrix does not lie over the expanded cusp");
    CosetSeries out;
    out.cusp = dec.cusp;
    out.offset = dec.offset;
    out.X = substitute_root_of_unity(e.X, dec.offset);
    out.Y = substitute_root_of_unity(e.Y, dec.offset);
    return out;
}

}
