#pragma once

#include "modparam/rational.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace modparam {

struct EllipticCurve {
    std::string label;
    Rational a1, a2, a3, a4, a6;
    Rational b2, b4, b6, b8, c4, c6, disc, j;
    long conductor = 0;
    long manin = 1;
    std::optional<long> degree_override;

    std::array<Rational, 5> ainvs() const { return {a1, a2, a3, a4, a6}; }
    // Exact g2, g3 of the lattice in the normalisation wp'^2 = 4 wp^3 - g2 wp - g3.
    Rational g2() const { return c4 / 12; }
    Rational g3() const { return c6 / 216; }
    // Value of the Weierstrass polynomial y^2 + a1 x y + a3 y - x^3 - a2 x^2 - a4 x - a6.
    Rational residual(const Rational& x, const Rational& y) const;
};

EllipticCurve derive_invariants(const std::array<Rational, 5>& a, long conductor = 0, const std::string& label = "");

enum class Reduction { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };
const char* reduction_name(Reduction r);

Reduction reduction_type(const EllipticCurve& E, long p);

constexpr long kDefaultCountingBudget = 1000000;

// p + 1 - #E(F_p) for good p, and the +1/-1/0 rule for bad p, by direct counting.
long a_p(const EllipticCurve& E, long p, long budget = kDefaultCountingBudget);

struct NewformCoefficients {
    long level = 0;
    long manin = 1;
    std::vector<long> a; // a[0] unused, a[1] = 1
    long size() const { return static_cast<long>(a.size()) - 1; }
    long operator[](long n) const { return a.at(n); }
};

NewformCoefficients newform_coefficients(const EllipticCurve& E, long n_max, long budget = kDefaultCountingBudget);

// Checks p | N <=> p | disc and the exponent pattern against the reduction types.
void validate_conductor(const EllipticCurve& E);

struct Point {
    bool infinity = true;
    Rational x, y;
    static Point at_infinity() { return Point{}; }
    static Point affine(const Rational& x, const Rational& y) { return Point{false, x, y}; }
    friend bool operator==(const Point& a, const Point& b)
    {
        return a.infinity == b.infinity && (a.infinity || (a.x == b.x && a.y == b.y));
    }
};

bool on_curve(const EllipticCurve& E, const Point& P);
Point negate(const EllipticCurve& E, const Point& P);
Point add(const EllipticCurve& E, const Point& P, const Point& Q);
Point multiply(const EllipticCurve& E, const Point& P, long k);
// Order of P if it is torsion of order <= bound, else 0.
long torsion_order(const EllipticCurve& E, const Point& P, long bound = 16);
// Integral points with |x| <= bound (used for small torsion searches).
std::vector<Point> small_integral_points(const EllipticCurve& E, long bound);

// Division polynomial psi_n in x, divided by psi_2 = 2y + a1 x + a3 when n is even.
QPoly division_polynomial(const EllipticCurve& E, long n);
// Monic polynomial whose roots are the x-coordinates of the nonzero points killed by n.
QPoly torsion_polynomial(const EllipticCurve& E, long n);

}
