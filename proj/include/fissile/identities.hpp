#pragma once

#include <vector>

#include "fissile/ensemble.hpp"
#include "fissile/subset.hpp"

namespace fissile {

// Tensor powers ⟨P(I)⟩^{⊗A} are ensembles over tuples of subset keys, one
// slot per element of A. I is {0, ..., i-1} and A is {0, ..., a-1}.

/// A function k: A -> P(I), listed by value.
using SubsetFunction = std::vector<Subset>;

/// Every k: A -> P(I) in mixed-radix order (slot 0 fastest). Throws
/// GuardExceeded past FISSILE_MAX_IDENTITY_FUNCTIONS (default 1 << 20).
std::vector<SubsetFunction> subset_functions(int a, Subset ground);
/// Those with values in P^×(I).
std::vector<SubsetFunction> proper_subset_functions(int a, Subset ground);
Subset union_of(const SubsetFunction& k);

/// R(A, I): functions whose values cover I.
std::vector<SubsetFunction> covers(int a, Subset ground);
/// R′(A, I): covers with every value a proper subset.
std::vector<SubsetFunction> proper_covers(int a, Subset ground);

/// ⊗_a x_a.
Ensemble tensor(const std::vector<Ensemble>& factors);
/// ⊗_{a ∈ A} x.
Ensemble tensor_power(const Ensemble& x, int a);
/// T(k) = ⊗_a Σ_{J ⊆ k(a)} (−1)^{|k(a)|−|J|} ⟨J⟩.
Ensemble cover_term(const SubsetFunction& k);

/// Σ_J (−1)^{|I|−|J|} ⊗⟨J⟩ = Σ_{k ∈ R(A,I)} T(k) in ⟨P(I)⟩^{⊗A}.
bool verify_cover_identity(int a, Subset ground);
/// ⊗ Σ_{J ≠ I} ± ⟨J⟩ − Σ_{J ≠ I} ± ⊗⟨J⟩ = Σ_{k ∈ R′(A,I)} T(k).
bool verify_proper_cover_identity(int a, Subset ground);
/// Σ_{k ∈ P(I)^A} T(k) = ⊗⟨I⟩.
bool verify_total_term_sum(int a, Subset ground);
/// Σ_{k ∈ P^×(I)^A} T(k) = ⊗ Σ_{J ≠ I} (−1)^{|I|−1−|J|} ⟨J⟩.
bool verify_proper_term_sum(int a, Subset ground);
/// R(A,I) ∖ R′(A,I) = P(I)^A ∖ P^×(I)^A.
bool verify_cover_difference(int a, Subset ground);

}  // namespace fissile
