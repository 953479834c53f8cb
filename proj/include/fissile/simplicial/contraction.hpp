#pragma once

#include <vector>

#include "fissile/simplicial/constructions.hpp"

namespace fissile {

/// σ_a: čΣ̂EA -> Σ̂EA together with the intermediate objects it is built from.
struct CanonicalContraction {
  ThickSimplex thick;      // EA
  Suspension suspension;   // Σ̂EA, with ĈEA inside
  Cone outer;              // ČĈEA
  ReducedCone reduced;     // čΣ̂EA, with ČΣ̂EA inside
  int letter = 0;
  Morphism sigma_tilde;    // ČĈEA -> ĈEA
  Morphism sigma_bar;      // ČΣ̂EA -> Σ̂EA
  Morphism sigma;          // čΣ̂EA -> Σ̂EA
};

/// Throws SimplicialError when `letter` is not in the alphabet.
CanonicalContraction make_canonical_contraction(const std::vector<int>& alphabet, int letter, int bound);

}  // namespace fissile
