#pragma once

// Root sets of univariate polynomials over F_p. Small orders are scanned
// exhaustively; large orders go through gcd(x^p - x, g) followed by
// Cantor-Zassenhaus equal-degree splitting into linear factors.

#include <vector>

#include "ffmcsat/poly.hpp"
#include "ffmcsat/rng.hpp"

namespace ffmcsat {

enum class RootsMode {
  Auto,      // scan when p < 2^10, Cantor-Zassenhaus otherwise
  Scan,      // force exhaustive evaluation (requires small order)
  FactorCZ,  // force the x^p - x route regardless of order
};

// Exactly {r in F_p : g(r) = 0}, sorted ascending. g must be nonzero
// (Errc::ZeroPolynomial: every element would be a root). Randomness for the
// Cantor-Zassenhaus splits comes from the caller's seeded PRNG.
std::vector<FieldElement> roots(const UnivariatePoly& g, Rng& rng,
                                RootsMode mode = RootsMode::Auto);

}  // namespace ffmcsat
