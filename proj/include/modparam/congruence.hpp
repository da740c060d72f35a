#pragma once

#include "modparam/algebra.hpp"
#include "modparam/param.hpp"
#include "modparam/periods.hpp"

#include <optional>

namespace modparam {

// (g2(L1) - g2(L2)) / 20, or (g3(L1) - g3(L2)) / 28 when the g2 agree. Uses the exact
// invariants carried by the lattices.
Rational congruence_constant(const PeriodLattice& L1, const PeriodLattice& L2);

// X1 - X2 = C * P(X3) / Q(X3) + constant, with P monic of degree deg Q - 1 (or - 2 when
// the g2 agree), Q monic with the x-coordinates T_j of the pole torsion as roots.
struct DifferenceForm {
    EllipticCurve E1, E2, E3;
    std::string e3_source; // "E1", "E2", a bundled label, or "short model"
    LatticeRelationKind relation = LatticeRelationKind::Unrelated;
    long index_in_1 = 0, index_in_2 = 0;

    Rational C;
    QPoly numerator;   // monic, in X3
    QPoly denominator; // monic, in X3
    Rational additive; // constant added after the quotient
    std::vector<PolyFactor> zeros, poles;
    std::vector<Integer> D_factors; // one per root R_i, with multiplicity
    Integer D = 1;
    bool torsion_integral = true;
    long verified_order = 0; // identity checked through q^(verified_order - 1)

    Rational modulus() const { return C / Rational(D); }
    // "8/(1 - X1)" style rendering in the variable name given.
    std::string to_string(const std::string& var = "X3") const;
};

DifferenceForm difference_rational_form(const EllipticCurve& E1, const EllipticCurve& E2, long n_max = 40,
                                        long bits = 256);

struct SturmResult {
    bool proved = false;
    bool enough_precision = true;
    long threshold = 0;            // all coefficients with n <= threshold must vanish
    long first_nonzero = 0;        // index of the first coefficient not divisible, when any
    bool has_nonzero = false;
};

// Meromorphic Sturm bound: ord(f mod p) + pole_order_sum > k m / 12 proves f = 0 mod p.
// pole_order_sum is the (negative) sum of the orders of f at its poles on X0(N).
SturmResult sturm_check(const QSeries& f, const Integer& modulus, long weight, long index, long pole_order_sum);

enum class CongruenceDecision { Proved, Refuted, InsufficientPrecision };
const char* congruence_decision_name(CongruenceDecision d);

struct CongruenceWitness {
    long n = 0;
    Rational coefficient;
    Integer gcd; // running gcd of the coefficients up to and including q^n
};

struct CongruenceVerdict {
    Integer modulus;
    char coordinate = 'X';
    CongruenceDecision decision = CongruenceDecision::InsufficientPrecision;
    long d1 = 0, d2 = 0;
    long threshold = 0;
    long window = 0; // coefficients examined: q^n for n < window
    Rational constant_term;
    bool constant_congruent = false;
    std::vector<CongruenceWitness> witnesses; // where the running gcd drops
    Integer gcd_bound = 0;                    // gcd of all non-constant coefficients in the window
    // Per prime power p^e of the modulus: the exponent proved by repeated Sturm steps.
    std::vector<std::pair<long, long>> prime_powers;
    bool soundness_checked = false;
    bool soundness_ok = false;
    std::string note;
};

// Decides X1 = X2 + const mod `modulus` at infinity (or Y with coordinate 'Y'), using the
// threshold 2(d1 + d2) (3(d1 + d2) for Y) from the modular degrees. Degrees not supplied
// are computed; when that fails only a refutation can be reported.
CongruenceVerdict parametrization_congruence(const EllipticCurve& E1, const EllipticCurve& E2, const Integer& modulus,
                                             long n_max = 0, char coordinate = 'X', std::optional<long> d1 = {},
                                             std::optional<long> d2 = {});

struct BasisElement {
    long order = 0;                                 // pole order at infinity
    std::vector<std::pair<long, long>> monomials;   // (a, b) for X^a Y^b, by decreasing pole order
    std::vector<Rational> coefficients;             // one per monomial
    QSeries series;
    std::string expression() const;
};

// Row-reduced basis of Q[X, Y] by pole order at infinity: orders 0, 2, 3, ..., max_pole_order,
// each q^-k + (no q^-j for the other orders j < k).
std::vector<BasisElement> reduced_basis(const EllipticCurve& E, long max_pole_order, long n_max = 12);

// s1 - s2 = constant + (terms divisible by modulus) through the common precision.
bool congruent_up_to_constant(const QSeries& s1, const QSeries& s2, const Integer& modulus);

}
