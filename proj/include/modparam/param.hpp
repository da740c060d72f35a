#pragma once

#include "modparam/curve.hpp"
#include "modparam/gamma0.hpp"
#include "modparam/periods.hpp"
#include "modparam/series.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace modparam {

enum class RecursionCase { Pole, Regular, TwoTorsion, Composition };
const char* recursion_case_name(RecursionCase c);

// Data attached to one cusp: scaling matrix, width, slash expansion of m f and the
// value of the Eichler integral at the cusp.
struct CuspData {
    long index = 0;
    CuspInfo info;
    long width = 1;
    bool exact = true;            // slash coefficients are rational (Atkin-Lehner route)
    long al_q = 0;
    long al_sign = 1;             // eigenvalue of W_Q on f
    QSeries slash;                // (m f)|gamma in q_w, rational route
    CSeries slash_cyc;            // numeric route, coefficients in Q(zeta_w)
    Complex kappa;                // eps(gamma z) - w sum (c_n/n) q_w^n
    Rational kappa_x, kappa_y;    // lattice coordinates of kappa modulo Lambda (torsion)
    bool pole = false;            // kappa in Lambda
    Point point;                  // phi(cusp); infinity when pole
};

template <class R>
struct CuspExpansionT {
    long cusp = 0;
    long width = 1;
    Mat2 gamma;
    long lambda = 1;
    RecursionCase kind = RecursionCase::Pole;
    long seeds = 0;
    LaurentSeries<R> slash;
    LaurentSeries<R> X, Y;
};
using CuspExpansion = CuspExpansionT<Rational>;
using CuspExpansionC = CuspExpansionT<Cyclotomic>;

// Everything needed to expand the modular parametrization of one curve at every cusp.
// Thread-safe: cusp data and expansions are computed lazily under a mutex.
class Parametrization {
public:
    explicit Parametrization(const EllipticCurve& E, long bits = kDefaultBits);

    const EllipticCurve& curve() const { return E_; }
    const Gamma0& group() const { return G_; }
    const PeriodLattice& lattice() const { return L_; }
    long bits() const { return bits_; }
    // Whether C(Gamma0(N)) lies in the lattice of E, so that X, Y are modular for Gamma0(N).
    bool periods_in_lattice() const { return periods_in_lattice_; }
    // Newform coefficients a_1..a_n, extended on demand.
    NewformCoefficients newform(long n) const;

    // Eichler integral at z, extending the newform as needed. Periods are snapped to L
    // (the curve's own lattice when null), so L must be at least as precise as `bits`.
    Complex eichler(const Complex& z, long bits, const PeriodLattice* L = nullptr) const;
    // (X(z), Y(z)) numerically.
    void phi(const Complex& z, long bits, Complex& X, Complex& Y, const PeriodLattice* L = nullptr) const;

    const CuspData& cusp_data(long cusp) const;
    // Rational expansion (X, Y) at a cusp with exact slash data, to order T in q_w.
    CuspExpansion expand(long cusp, long T, long lambda = 1) const;
    // Expansion over Q(zeta_w); works for every cusp.
    CuspExpansionC expand_cyclotomic(long cusp, long T, long lambda = 1) const;

private:
    EllipticCurve E_;
    long bits_;
    Gamma0 G_;
    PeriodLattice L_;
    bool periods_in_lattice_ = false;
    mutable std::recursive_mutex mu_;
    mutable NewformCoefficients f_;
    mutable std::map<long, std::unique_ptr<CuspData>> data_;
    mutable std::map<std::pair<long, long>, std::shared_ptr<CuspExpansion>> cache_;

    NewformCoefficients newform_locked(long n) const;
    bool check_periods() const;
    Complex eps_locked(const Complex& z, long bits, const PeriodLattice* L = nullptr) const;
    void compute_al(CuspData& D) const;
    void compute_numeric(CuspData& D) const;
    void classify_kappa(CuspData& D) const;
};

// Convenience wrappers around Parametrization.
CuspExpansion expand_infinity(const EllipticCurve& E, const NewformCoefficients& f, long n_max);
CuspData slash_f_at_cusp(const Parametrization& P, long cusp);
CuspExpansion expand_cusp(const Parametrization& P, long cusp, long n_max, long lambda = 1);

// Solve the two relations from the given slash expansion (m f)|gamma and seeds.
// The case is chosen from the seed data: pole at the cusp, a regular constant point,
// or a 2-torsion constant point.
template <class R>
void run_recursion(const EllipticCurve& E, long manin, const LaurentSeries<R>& slash, RecursionCase kind,
                   long seeds, LaurentSeries<R>& X, LaurentSeries<R>& Y, long T);

// Composition oracle: X = m^2 wp(kappa + U) - b2/12 and Y = (m^3 wp'(kappa + U) - a1 X - a3) / 2
// with U = w sum (c_n / n) q_w^n. At a pole kappa is a lattice point; otherwise the point
// (x0, y0) = phi(cusp) supplies wp(kappa), wp'(kappa).
template <class R>
void compose_expansion(const EllipticCurve& E, long manin, const LaurentSeries<R>& slash, bool pole,
                       const R& x0, const R& y0, LaurentSeries<R>& X, LaurentSeries<R>& Y, long T);

// Weierstrass residual Y^2 + a1 X Y + a3 Y - X^3 - a2 X^2 - a4 X - a6.
template <class R>
LaurentSeries<R> weierstrass_residual(const EllipticCurve& E, const LaurentSeries<R>& X, const LaurentSeries<R>& Y);
// q_w dX/dq_w - w (2Y + a1 X + a3) (slash / m).
template <class R>
LaurentSeries<R> differential_residual(const EllipticCurve& E, long manin, const LaurentSeries<R>& slash,
                                       const LaurentSeries<R>& X, const LaurentSeries<R>& Y);

// (X(g z), Y(g z)) from the expansion at the cusp of g = delta gamma_rho T^k: q_w -> zeta_w^k q_w.
struct CosetSeries {
    CSeries X, Y;
    long cusp = 0, offset = 0;
};
CosetSeries act_coset(const Gamma0& G, const CuspExpansion& e, const Mat2& g);

// The negation endomorphism applied to a point-valued pair of series.
template <class R>
void negate_pair(const EllipticCurve& E, const LaurentSeries<R>& X, const LaurentSeries<R>& Y, LaurentSeries<R>& Xn,
                 LaurentSeries<R>& Yn);

}
