#pragma once

#include "modparam/rational.hpp"
#include "modparam/real.hpp"

#include <vector>

namespace modparam {

using QMatrix = std::vector<std::vector<Rational>>;

struct LinearSolution {
    bool consistent = false;
    bool unique = false;
    long rank = 0;
    std::vector<Rational> x; // one solution (free variables set to zero)
};

// Exact Gaussian elimination for A x = b.
LinearSolution solve_exact(QMatrix A, std::vector<Rational> b);
// Basis of the right kernel of A.
std::vector<std::vector<Rational>> kernel_exact(QMatrix A, long cols);

QPoly poly_derivative(const QPoly& p);
QPoly poly_monic(const QPoly& p);
// p^(e) exactly divides? Returns the largest e with factor^e | p (p nonzero).
long poly_multiplicity(const QPoly& p, const QPoly& factor);

// Complex roots of a nonzero polynomial (Aberth iteration), with multiplicity.
std::vector<Complex> poly_roots(const QPoly& p, long bits);

struct PolyFactor {
    QPoly f;            // monic
    long multiplicity = 1;
    bool irreducible = true; // false for a leftover block of degree >= 3 that was not split
};

// Factorization over Q into monic factors: linear and quadratic factors are found from
// numerically located roots and verified exactly; anything left is returned as one block.
std::vector<PolyFactor> factor_over_q(const QPoly& p, long bits = 256);

}
