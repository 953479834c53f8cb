#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fissile/ensemble.hpp"
#include "fissile/layout_cones.hpp"
#include "fissile/layouts.hpp"
#include "fissile/posets.hpp"
#include "fissile/subgroup.hpp"

namespace fissile {

/// A presheaf M of finite sets on the faces of E together with an extender
/// λ_A^B on the induced layout presheaf M̲. Elements of M̲(A) are encoded as
/// tuples (encode_tuple) of M(F)-keys in block order, so M̲({F}) holds
/// one-element tuples.
class LayoutPresheaf {
 public:
  virtual ~LayoutPresheaf() = default;

  virtual Subset ground() const = 0;
  /// m|_to for m in M(from) and to ⊆ from.
  virtual Key restrict_face(Subset from, Subset to, const Key& m) const = 0;
  /// λ_A^B: M̲(B) -> M̲(A) for A ≥ B.
  virtual Key extend(const Layout& a, const Layout& b, const Key& tuple) const = 0;
  /// A random element of M(F), used by the randomized suites.
  virtual Key sample(Subset f, std::mt19937_64& rng) const = 0;

  /// m̲|_B = (m_{(A)G}|_G)_{G ∈ B} for A ≥ B.
  Key restrict_layout(const Layout& a, const Layout& b, const Key& tuple) const;
};

/// Φ_E for one presheaf, on a ground subset F ⊆ E (so that Φ_F of the inner
/// identity is available too).
class Fissilizer {
 public:
  Fissilizer(const LayoutPresheaf& m, Subset ground);
  explicit Fissilizer(const LayoutPresheaf& m) : Fissilizer(m, m.ground()) {}

  const LayoutPresheaf& presheaf() const noexcept { return *m_; }
  const LayoutLattice& lattice() const noexcept { return lattice_; }
  const FinitePoset& poset() const noexcept { return poset_; }
  Subset ground() const noexcept { return ground_; }

  /// Ensembles over M(ground) <-> over M̲({ground}).
  static Ensemble wrap(const Ensemble& q);
  static Ensemble unwrap(const Ensemble& q);

  /// Q^□(A) = ⊓_{F ∈ A} Q|_F; ⟨•⟩ for A = ∅.
  Ensemble q_square(const Ensemble& q, const Layout& a) const;
  /// R|_A in M̲(A).
  Ensemble restrict_to_layout(const Ensemble& r, const Layout& a) const;
  /// Restriction and extender of M̲ by lattice index, lifted to ensembles.
  Ensemble restrict_index(int from, int to, const Ensemble& s) const;
  Ensemble extend_index(int p, int q, const Ensemble& s) const;

  bool is_fissile(const Ensemble& r) const;
  /// The first layout where fissility fails, or empty.
  std::string fissility_failure(const Ensemble& r) const;
  Ensemble fissilize(const Ensemble& q) const;

 private:
  const LayoutPresheaf* m_;
  Subset ground_;
  LayoutLattice lattice_;
  FinitePoset poset_;
};

/// Restriction of an ensemble over M(from) to M(to).
Ensemble restrict_face_ensemble(const LayoutPresheaf& m, Subset from, Subset to, const Ensemble& q);

/// Outcome of the congruence check Φ_E(Q) − Q ∈ N({E}).
struct CongruenceReport {
  bool hypotheses_hold = false;
  bool conclusion_holds = false;
  std::string diagnostic;
  Membership certificate;
};

/// N is given by generators per lattice index. Verifies that N is preserved
/// by restrictions and extenders, that Q^□(A) − Q|_A ∈ N(A) for all A, and
/// then the conclusion.
CongruenceReport check_fissilizer_congruence(const Fissilizer& phi, const Ensemble& q,
                                             const std::vector<std::vector<Ensemble>>& n_generators);

/// The smallest family of subgroups containing the seeds and preserved by
/// all restrictions and extenders.
std::vector<std::vector<Ensemble>> admissible_closure(const Fissilizer& phi,
                                                      std::vector<std::vector<Ensemble>> seeds);

/// M(F) = labellings of the vertices (or of all faces) of ΔF by 0..k-1.
/// λ keeps labels of cells lying in Δ[B] and puts 0 elsewhere.
class LabellingPresheaf : public LayoutPresheaf {
 public:
  LabellingPresheaf(Subset ground, int labels, bool on_faces);

  Subset ground() const override { return ground_; }
  Key restrict_face(Subset from, Subset to, const Key& m) const override;
  Key extend(const Layout& a, const Layout& b, const Key& tuple) const override;
  Key sample(Subset f, std::mt19937_64& rng) const override;

  /// Cells of ΔF in key order.
  std::vector<Subset> cells(Subset f) const;

 private:
  Subset ground_;
  int labels_;
  bool on_faces_;
};

/// The simplicial model: M(F) = Z^{ČβΔF}, restriction along the inclusions,
/// and λ_A^B = Z^{ρ_B^A} through the identification M̲(A) = Z^{ČβΔ[A]}.
class SimplicialModelPresheaf : public LayoutPresheaf {
 public:
  SimplicialModelPresheaf(Subset ground, SetPtr z);

  Subset ground() const override { return cones_.ground(); }
  Key restrict_face(Subset from, Subset to, const Key& m) const override;
  Key extend(const Layout& a, const Layout& b, const Key& tuple) const override;
  Key sample(Subset f, std::mt19937_64& rng) const override;

  const LayoutCones& cones() const noexcept { return cones_; }
  const SetPtr& target() const noexcept { return z_; }
  /// The identification of M(A) with Z^{T_A} in both directions.
  Morphism tuple_to_morphism(const Layout& a, const Key& tuple) const;
  Key morphism_to_tuple(const Layout& a, const Morphism& m) const;

 private:
  LayoutCones cones_;
  SetPtr z_;
  mutable std::map<Subset, std::vector<Morphism>> all_;  // Z^{T_F}, enumerated for sampling
};

}  // namespace fissile
