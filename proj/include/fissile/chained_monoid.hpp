#pragma once

#include <climits>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "fissile/ensemble.hpp"
#include "fissile/simplicial/constructions.hpp"
#include "fissile/subset.hpp"

namespace fissile {

// The monoid ring ⟨P(I)⟩: ensembles over subset keys, multiplied by
// intersection. I is always {0, ..., n-1}.

Ensemble subset_element(Subset k);
/// ω_J = Σ_{K ⊆ J} (−1)^{|J|−|K|} ⟨K⟩.
Ensemble omega(Subset j);
Ensemble ring_product(const Ensemble& a, const Ensemble& b);

struct IdealGenerator {
  Subset l = 0;
  Subset j = 0;
  friend bool operator==(const IdealGenerator&, const IdealGenerator&) = default;
};

/// π = Σ c ⟨L⟩ω_J with every |J| at least the level.
struct IdealCertificate {
  bool member = false;
  std::vector<std::pair<Integer, IdealGenerator>> terms;
  std::string reason;
};

/// The nonzero generators ⟨L⟩ω_J of ⟨P(I)⟩^[s], L ⊆ I, |J| ≥ s.
std::vector<IdealGenerator> ideal_generators(Subset ground, int level);
Ensemble generator_value(const IdealGenerator& g);
IdealCertificate ideal_membership(const Ensemble& pi, Subset ground, int level);
/// Empty when the certificate proves π ∈ ⟨P(I)⟩^[level].
std::string ideal_certificate_failure(const Ensemble& pi, Subset ground, int level, const IdealCertificate& c);

/// A left action of P(I) on a based simplicial set by based morphisms.
/// maps[K] is K_(Z) for every mask K ⊆ ground.
struct MonoidAction {
  Subset ground = 0;
  SetPtr space;
  std::vector<Morphism> maps;

  const Morphism& of(Subset k) const { return maps.at(k); }
};

/// Checks I_(Z) = id, (K∩K')_(Z) = K_(Z) ∘ K'_(Z) and basedness.
std::string action_failure(const MonoidAction& a);
/// The induced action on čZ.
MonoidAction cone_action(const MonoidAction& a, const ReducedCone& cone);
/// K_(Z) ∘ v.
Morphism act(const MonoidAction& a, Subset k, const Morphism& v);
/// K acting on an ensemble over Z^T.
Ensemble act(const MonoidAction& a, Subset k, const SetPtr& t, const Ensemble& e);
/// π·⟨v⟩.
Ensemble act_ring(const MonoidAction& a, const Ensemble& pi, const Morphism& v);
/// h ∘ K_(Z) = K_(Z̃) ∘ h on the simplices flagged by `domain` (all when null).
bool is_equivariant(const MonoidAction& from, const MonoidAction& to, const Morphism& h,
                    const std::vector<std::vector<char>>* domain = nullptr);

// Ensembles of morphisms T -> Z are ensembles over morphism keys.

/// ⟨Z^k⟩ for k: T̃ -> T.
Ensemble precompose(const Ensemble& e, const SetPtr& z, const Morphism& k);
/// ⟨h^T⟩ for h: Z -> Z̃.
Ensemble postcompose(const Ensemble& e, const SetPtr& t, const Morphism& h);
/// ⊓∨ v_j ∈ ⟨Z^{∨T_j}⟩.
Ensemble wedge_product(const Wedge& w, const SetPtr& z, const std::vector<Ensemble>& parts);

// Filtration witnesses.

/// π·⟨w⟩ with π certified in ⟨P(I)⟩^[rank of the part].
struct WitnessTerm {
  Ensemble pi;
  IdealCertificate certificate;
  Morphism w;
};

struct BlockPart {
  SetPtr domain;
  int rank = 0;
  std::vector<WitnessTerm> terms;
};

/// v = ⟨Z^f⟩(⊓∨ v_j) with v_j = Σ π·⟨w⟩ over the part's terms.
struct Block {
  std::shared_ptr<const Wedge> wedge;  // ∨ of the part domains
  Morphism f;                          // T -> wedge->set
  std::vector<BlockPart> parts;

  int rank() const;
};

inline constexpr int kAnyLevel = INT_MAX;

/// Σ c·block, claimed to lie in ⟨Z^T⟩^[level]. The empty witness is zero at
/// every level.
struct Witness {
  SetPtr source;
  std::shared_ptr<const MonoidAction> action;
  int level = kAnyLevel;
  std::vector<std::pair<Integer, Block>> blocks;

  Witness& operator+=(const Witness& other);
  Witness& operator-=(const Witness& other);
  Witness& operator*=(const Integer& c);
};

Ensemble evaluate_part(const MonoidAction& a, const BlockPart& part);
Ensemble evaluate_block(const MonoidAction& a, const Block& b);
Ensemble evaluate(const Witness& w);

/// Builds a block from f: T -> ∨T_j and its parts, checking every
/// certificate, and evaluates it.
std::pair<Ensemble, Block> make_block(const MonoidAction& a, std::shared_ptr<const Wedge> wedge, Morphism f,
                                      std::vector<BlockPart> parts);
/// One part with certified π·⟨w⟩ as term.
WitnessTerm make_term(const Ensemble& pi, Subset ground, int rank, Morphism w);

/// Empty when every block checks, has rank ≥ s, every term lands in
/// `support` (if given) and Σ c·block = v. Otherwise a diagnostic.
std::string witness_failure(const Ensemble& v, const Witness& w, int s,
                            const std::vector<std::vector<char>>* support = nullptr);
inline bool verify_witness(const Ensemble& v, const Witness& w, int s,
                           const std::vector<std::vector<char>>* support = nullptr) {
  return witness_failure(v, w, s, support).empty();
}

/// The level-0 witness of v: one block with f = id and terms c⟨I⟩·⟨w⟩.
Witness trivial_witness(const Ensemble& v, const SetPtr& source, std::shared_ptr<const MonoidAction> a);
/// The one-block witness of π·⟨v⟩ at the given rank.
Witness single_term_witness(const Ensemble& pi, const Morphism& v, int rank, std::shared_ptr<const MonoidAction> a);

// The four transforms.

/// ⟨Z^k⟩ for k: T̃ -> T.
Witness restrict_witness(const Witness& w, const Morphism& k);
/// ⟨h^T⟩ for an equivariant h: Z -> Z̃. Throws unless every term lands in
/// `domain` and h is equivariant there.
Witness map_witness(const Witness& w, const Morphism& h, std::shared_ptr<const MonoidAction> to,
                    const std::vector<std::vector<char>>* domain = nullptr);
/// ⟨č_Z^T⟩: blocks move to čT_j with the lift g = e⁻¹ ∘ čf.
Witness cone_witness(const Witness& w, const ReducedCone& source_cone, const ReducedCone& target_cone,
                     std::shared_ptr<const MonoidAction> cone_act);
/// ⊓∨ of witnesses for v_i ∈ ⟨Z^{T_i}⟩, on the wedge `sources` of the T_i.
Witness wedge_witness(const std::vector<const Witness*>& parts, const Wedge& sources);

/// An ensemble carried together with its witness, for use with the poset
/// templates (restriction and extension act on both).
struct WitnessedEnsemble {
  Ensemble value;
  Witness witness;

  WitnessedEnsemble& operator+=(const WitnessedEnsemble& o) {
    value += o.value;
    witness += o.witness;
    return *this;
  }
  WitnessedEnsemble& operator-=(const WitnessedEnsemble& o) {
    value -= o.value;
    witness -= o.witness;
    return *this;
  }
};
inline const Ensemble& ensemble_of(const WitnessedEnsemble& w) { return w.value; }
inline bool is_zero_value(const WitnessedEnsemble& w) { return w.value.is_zero() && w.witness.blocks.empty(); }

/// Deduplicating table of simplicial sets referenced from serialized
/// witnesses.
class SpaceTable {
 public:
  int id(const SetPtr& s);
  const std::vector<SetPtr>& spaces() const noexcept { return spaces_; }
  nlohmann::json to_json() const;
  static std::vector<SetPtr> from_json(const nlohmann::json& j);

 private:
  std::vector<SetPtr> spaces_;
  std::map<const SimplicialSet*, int> by_pointer_;
  std::map<std::string, std::vector<int>> by_shape_;
};

nlohmann::json witness_to_json(const Witness& w, SpaceTable& spaces);
/// Rebuilds a witness against a known source and action; part domains come
/// from the space table.
Witness witness_from_json(const nlohmann::json& j, const SetPtr& source, std::shared_ptr<const MonoidAction> a,
                          const std::vector<SetPtr>& spaces);

}  // namespace fissile
