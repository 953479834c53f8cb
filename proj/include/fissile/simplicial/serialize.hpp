#pragma once

#include "json.hpp"
#include "fissile/simplicial/simplicial_set.hpp"

namespace fissile {

/// {bound, basepoint, counts, faces, degeneracies}: per-dimension simplex
/// tables with flattened face and degeneracy matrices.
nlohmann::json set_to_json(const SimplicialSet& s);
/// Validates the simplicial identities while loading.
SetPtr set_from_json(const nlohmann::json& j);

}  // namespace fissile
