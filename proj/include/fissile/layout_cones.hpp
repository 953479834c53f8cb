#pragma once

#include <map>
#include <memory>

#include "fissile/layouts.hpp"
#include "fissile/simplicial/complexes.hpp"

namespace fissile {

/// The cones T_A = ČβΔ[A] for layouts of a ground set E, truncated at a
/// common bound, with the inclusions, canonical retractions and wedge
/// splittings relating them. Objects are built on first use and cached;
/// not safe for concurrent first use.
class LayoutCones {
 public:
  LayoutCones(Subset ground, int bound);

  Subset ground() const noexcept { return ground_; }
  int bound() const noexcept { return bound_; }

  /// T_F for a face F (the layout {F}).
  const FaceCone& face(Subset f) const { return layout(top_layout(f)); }
  const FaceCone& layout(const Layout& a) const;

  /// T_B ⊆ T_A for Δ[B] ⊆ Δ[A].
  const Morphism& inclusion(const Layout& b, const Layout& a) const;
  /// ρ_B^A: T_A -> T_B.
  const Morphism& retraction(const Layout& a, const Layout& b) const;

  /// ∨_{F ∈ A} T_F, parts in block order.
  const Wedge& split(const Layout& a) const;
  /// The isomorphism T_A -> ∨_{F ∈ A} T_F.
  const Morphism& to_split(const Layout& a) const;
  /// The morphism T_A -> target that is parts[j] on the j-th block.
  Morphism assemble(const Layout& a, const SetPtr& target, const std::vector<const Morphism*>& parts) const;

  /// (βΔF)₊.
  const SetPtr& plus(Subset f) const;
  /// (βΔF)₊ ⊆ T_F: the added basepoint goes to the apex.
  const Morphism& plus_inclusion(Subset f) const;
  /// The restriction of plus_inclusion(f) along (βΔG)₊ ⊆ (βΔF)₊.
  const Morphism& plus_face_inclusion(Subset g, Subset f) const;

 private:
  Subset ground_;
  int bound_;
  mutable std::map<Key, std::unique_ptr<FaceCone>> cones_;
  mutable std::map<std::pair<Key, Key>, Morphism> inclusions_;
  mutable std::map<std::pair<Key, Key>, Morphism> retractions_;
  mutable std::map<Key, std::unique_ptr<Wedge>> splits_;
  mutable std::map<Key, Morphism> to_split_;
  mutable std::map<Subset, SetPtr> plus_;
  mutable std::map<Subset, Morphism> plus_inclusion_;
  mutable std::map<std::pair<Subset, Subset>, Morphism> plus_face_;
};

}  // namespace fissile
