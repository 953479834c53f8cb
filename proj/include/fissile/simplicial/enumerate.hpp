#pragma once

#include <cstddef>
#include <vector>

#include "fissile/simplicial/simplicial_set.hpp"

namespace fissile {

/// Default cap on enumerated morphisms; FISSILE_MAX_MORPHISMS overrides it.
std::size_t default_morphism_cap();

/// All based morphisms T -> Z in a deterministic order, found by assigning
/// nondegenerate simplices dimension by dimension. `prescribed`, when given,
/// fixes map[n][x] wherever it is not -1. Throws GuardExceeded past `cap`.
std::vector<Morphism> enumerate_based_morphisms(const SetPtr& t, const SetPtr& z, std::size_t cap,
                                                const std::vector<std::vector<int>>* prescribed = nullptr);
std::vector<Morphism> enumerate_based_morphisms(const SetPtr& t, const SetPtr& z);

}  // namespace fissile
