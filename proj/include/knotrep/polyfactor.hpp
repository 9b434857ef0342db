#pragma once

#include <vector>

#include "knotrep/laurent.hpp"

namespace knotrep {

struct PolyFactor {
    PolyQ factor;     // irreducible over Q, primitive integer coefficients, lc > 0
    int multiplicity; // >= 1
};

// Full factorization over Q (constant factors dropped). Squarefree
// decomposition followed by Zassenhaus: factor mod p, Hensel lift, subset
// recombination. Degrees beyond the cap are rejected (desk-scale guard).
std::vector<PolyFactor> factor_rational(const PolyQ& p, int degree_cap = 64);

bool poly_is_irreducible(const PolyQ& p);

} // namespace knotrep
