#pragma once

#include "modparam/algebra.hpp"
#include "modparam/expr.hpp"
#include "modparam/param.hpp"

#include <optional>
#include <variant>

namespace modparam {

// A point of the upper half-plane that is a root of a z^2 + b z + c with (a, b, c)
// primitive, a > 0 and b^2 - 4ac < 0.
struct QuadPoint {
    Integer a = 1, b = 0, c = 1;

    static QuadPoint from_form(const Integer& a, const Integer& b, const Integer& c);
    Integer discriminant() const { return b * b - 4 * a * c; }
    // g z for an integer matrix g of positive determinant.
    QuadPoint transform(const Mat2& g) const;
    Complex value(long bits) const;
    // "(-7 + sqrt(-3))/52"
    std::string to_string() const;
    // "52*z^2 + 14*z + 1"
    std::string minpoly_string(const std::string& var = "z") const;
    friend bool operator==(const QuadPoint& x, const QuadPoint& y) { return x.a == y.a && x.b == y.b && x.c == y.c; }
};

// The reduced point in the SL2(Z)-orbit of z and R with R z = reduced.
QuadPoint reduce_quad(const QuadPoint& z, Mat2& R);
// Exact test for g z1 = z2 with g in Gamma0(N); the witness g is stored when found.
bool gamma0_equivalent(const QuadPoint& z1, const QuadPoint& z2, long N, Mat2* witness = nullptr);

Complex j_invariant(const Complex& tau, long bits);
// q^-1 + 744 + 196884 q + ... + O(q^T), from E4^3 / Delta.
QSeries j_series(long T);

// P(j) / Q(j) with coprime numerator and denominator, denominator monic.
struct JRational {
    QPoly num, den{Rational(1)};

    QSeries expand(long T) const;
    std::string to_string(const std::string& var = "j") const;
    friend bool operator==(const JRational& x, const JRational& y) { return x.num == y.num && x.den == y.den; }
    friend bool operator!=(const JRational& x, const JRational& y) { return !(x == y); }
};

// Minimal-degree P/Q with s = P(j)/Q(j) through the truncation order of s.
JRational j_recognize(const QSeries& s, long degree_bound);

// Canonical representatives gamma_rho T^k, one per coset, identity first.
std::vector<Mat2> coset_reps(long N);

// F(X, Y) as a function on X0(N): its expansion at each cusp rho in q_w. The expansion
// at the coset gamma_rho T^k follows by q_w -> zeta_w^k q_w.
struct ModularFunction {
    struct CuspPart {
        long cusp = 0;
        long width = 1;
        QSeries F;
    };

    const Parametrization* param = nullptr;
    Expr expr = Expr::var_x();
    long lambda = 1;
    long n_max = 0;
    std::vector<CuspPart> parts;

    long level() const { return param->group().level(); }
    long index() const { return param->group().index(); }
    CSeries coset_expansion(long coset) const;
    // Absolute precision in q that every cusp part supports.
    long prec_q() const;
};

// Per-cusp expansions of expr(X, Y) to order about n_max in q (w n_max in q_w).
ModularFunction build_modular_function(const Parametrization& P, const Expr& expr, long lambda, long n_max);

// Coefficients A_0, ..., A_n (A_n = 1) of prod over cosets (x - F(gamma z)), rational
// series in q. Each cusp orbit is symmetrized on its own (power sums and Newton's
// identities over the w conjugates) and the orbit polynomials are multiplied.
// With kmax >= 0 only A_i for i >= n - kmax are computed (the rest are left as O(1)).
std::vector<QSeries> modular_polynomial(const ModularFunction& F, long kmax = -1);
// Power sums sum_gamma F(gamma z)^r, r = 1..rmax, by direct summation of the per-coset
// cyclotomic series.
std::vector<QSeries> power_sums_direct(const ModularFunction& F, long rmax);
// Newton's identities: power sums p_1..p_rmax of the roots of sum A_i x^i.
std::vector<QSeries> power_sums_from_coefficients(const std::vector<QSeries>& A, long rmax);

// The coefficients A_i for i in `which` (all when empty) as rational functions of j; n_max
// is raised until j_recognize has the precision it needs.
std::vector<JRational> recognize_coefficients(const Parametrization& P, const Expr& expr, std::vector<long> which,
                                              long degree_bound = 0, long lambda = 1);
long default_degree_bound(long N);

struct Place {
    QPoly minpoly;            // of the j-value, monic
    bool irreducible = true;
    long zeros = 0, poles = 0; // summed over the points of X0(N) above each root
};

struct CuspPlace {
    long cusp = 0;
    std::string label;
    long order = 0; // in the local parameter q_w
};

struct Divisor {
    std::vector<Place> places;
    std::vector<CuspPlace> cusps;
    std::vector<JRational> coefficients; // A_0..A_{n-1}
    long degree() const;
    long pole_count() const;
    // Product of the minimal polynomials of the interior poles.
    QPoly pole_polynomial() const;
};

Divisor divisor_of(const ModularFunction& F, long degree_bound = 0);

// Reduced CM points whose j-invariant is a root of j_poly (roots that are not CM values
// are skipped). Throws NoPreimageFound when there is none.
std::vector<QuadPoint> cm_points(const QPoly& j_poly, long bits = 256);

struct Preimage {
    QuadPoint z;  // gamma tau
    Mat2 gamma;
    long coset = 0;
    Complex X, Y;
};

// Either a rational point on E or the poles of an expression.
using PreimageTarget = std::variant<Point, Expr>;

// Tests every coset of Gamma0(N) against every CM point above j_poly; matches found at
// `bits` are re-verified at twice the precision.
std::vector<Preimage> preimage_search(const Parametrization& P, const QPoly& j_poly, const PreimageTarget& target,
                                      long bits = 256);

// F o W_Q as an expression: phi(W_Q z) = P_Q + [lambda_Q] phi(z).
Expr atkin_lehner_expr(const Parametrization& P, long Q, const Expr& F);
Point atkin_lehner_point(const Parametrization& P, long Q, const Point& p);
ModularFunction atkin_lehner_apply(const ModularFunction& F, long Q);

struct CMVerdict {
    long m = 0;
    bool fixed = false;
    Integer D = 0;
    long witness = -1; // s with D = s^2 mod 4m
    std::string note;
};

// W_m z SL2(Z)-equivalent to z, i.e. W_m maps the point to one with an isomorphic curve.
bool atkin_lehner_fixes(long N, long m, const QuadPoint& z);
// W_m z Gamma0(N)-equivalent to z: the point of X0(N) itself is fixed.
bool atkin_lehner_fixes_point(long N, long m, const QuadPoint& z);
CMVerdict cm_criterion(const QuadPoint& z, long m, bool fixed);

// Degree of X0(N) -> E. Uses the divisor of X when every cusp has exact data and the
// index is small, and the Petersson norm otherwise (or when forced).
long modular_degree(const Parametrization& P);
long modular_degree_divisor(const Parametrization& P);
// 4 pi^2 ||f||^2 / area(Lambda), before rounding.
double modular_degree_area(const Parametrization& P);

}
