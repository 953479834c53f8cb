#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fissile/chained_monoid.hpp"
#include "fissile/layout_cones.hpp"
#include "fissile/layouts.hpp"

namespace fissile {

using Support = std::vector<std::vector<char>>;

/// W(I) = ∨_{J ⊆ I} Σ̂E(I∖J), truncated at a bound. Wedge part J (by mask)
/// is the suspension of the thick simplex on the letters of I∖J.
struct WedgeW {
  Subset ground = 0;
  int bound = 0;
  std::vector<ThickSimplex> thick;
  std::vector<Suspension> components;
  std::shared_ptr<const Wedge> wedge;
  SetPtr set;
  std::shared_ptr<const MonoidAction> action;

  /// (in_J)_[0](1): the top vertex of component J.
  int top_vertex(Subset j) const;
  /// ⊤_W, the top vertex of component I.
  int lead_vertex() const { return top_vertex(ground); }
  /// W^L: components J ⊆ L together with the basepoint.
  Support support(Subset l) const;
  /// W^×: components J ≠ I.
  Support proper_support() const;
};

/// Throws GuardExceeded for |I| > FISSILE_MAX_W_GROUND (default 3) and
/// SimplicialError if any invariant fails.
WedgeW build_w(Subset ground, int bound);
/// Empty when the action laws hold, ⊤_W is isolated and W^×, W^L are
/// invariant.
std::string w_invariant_failure(const WedgeW& w);

/// W(I) with the cones over it and over the sources used by the
/// construction: T_F = ČβΔF, (βΔF)₊, and the retractions σ_i^L.
class WedgeContext {
 public:
  /// |E| = e, |I| = i; the bound is |E|.
  WedgeContext(int i, int e);

  const WedgeW& w() const noexcept { return w_; }
  const LayoutCones& cones() const noexcept { return cones_; }
  Subset ground() const noexcept { return w_.ground; }
  Subset faces() const noexcept { return cones_.ground(); }
  int bound() const noexcept { return w_.bound; }

  const ReducedCone& cone_w() const noexcept { return *cone_w_; }
  const std::shared_ptr<const MonoidAction>& cone_action_w() const noexcept { return cone_action_; }
  /// čW^L inside čW.
  const Support& cone_support(Subset l) const;
  /// σ_i^L: čW -> W, defined on čW^L only (−1 elsewhere).
  const Morphism& contraction(Subset l, int i) const;

  /// č((βΔF)₊) and the identification T_F ≅ č((βΔF)₊).
  const ReducedCone& plus_cone(Subset f) const;
  const Morphism& plus_cone_iso(Subset f) const;

  /// ξ_J^F: (βΔF)₊ -> W.
  Morphism xi(Subset j, Subset f) const;
  /// χ_i^L(v) = σ_i^L ∘ čv for v: T -> W^L with čT = cone.
  Morphism filling(const Morphism& v, const ReducedCone& cone, Subset l, int i) const;
  /// ⟨χ_i^L⟩ on ensembles over (βΔF)₊, landing on T_F.
  Ensemble fill(const Ensemble& e, Subset f, Subset l, int i) const;
  /// The matching witness transform.
  Witness fill_witness(const Witness& w, Subset f, Subset l, int i) const;

  /// q|_{T_B} for q over T_F, Δ[B] ⊆ ΔF.
  Ensemble restrict_to_layout(const Ensemble& q, Subset f, const Layout& b) const;
  /// q|_{(βΔF)₊}.
  Ensemble restrict_to_plus(const Ensemble& q, Subset f) const;
  /// ⊓∨_{G ∈ B} parts[G] in ⟨W^{T_B}⟩; parts follow the block order.
  Ensemble combine(const Layout& b, const std::vector<const Ensemble*>& parts) const;
  /// The matching witness product, restricted to T_B.
  Witness combine_witness(const Layout& b, const std::vector<const Witness*>& parts) const;

  /// Empty when every term of q is a based morphism T_F -> W landing in W^L.
  std::string lands_failure(const Ensemble& q, Subset f, const Support& support) const;
  /// Empty when q|_{T_B} = ⊓∨_{G ∈ B} q|_{T_G} for every B ∈ A(F).
  std::string fissility_failure(const Ensemble& q, Subset f) const;

 private:
  WedgeW w_;
  LayoutCones cones_;
  std::shared_ptr<ReducedCone> cone_w_;
  std::shared_ptr<const MonoidAction> cone_action_;
  mutable std::map<Subset, Support> cone_support_;
  mutable std::map<std::pair<Subset, int>, Morphism> contraction_;
  mutable std::map<Subset, std::unique_ptr<ReducedCone>> plus_cone_;
  mutable std::map<Subset, Morphism> plus_iso_;
};

/// One constructed p_J^F with its witness d for Σ_{K ⊆ J} (−1)^{|J|−|K|} p_K^F
/// at level |J| inside W^J.
struct ConstructedP {
  Subset face = 0;
  Subset j = 0;
  Ensemble p;
  Witness d;
};

struct PTable {
  int i = 0;
  int e = 0;
  std::vector<ConstructedP> entries;  // in construction order

  const ConstructedP& at(Subset face, Subset j) const;
};

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws GuardExceeded outside the size guard: |I| ≤ FISSILE_MAX_CONSTRUCT_I
/// (default 2) and |E| ≤ FISSILE_MAX_CONSTRUCT_E (default 2), or |I| ≤ 3 with
/// |E| = 1.
void check_construction_guard(int i, int e);

/// Builds p_J^F for every face F and proper J ⊂ I by induction, checking the
/// three conditions at each step. Throws ConstructionError naming the failing
/// condition.
PTable construct_p(const WedgeContext& ctx);

struct ConstructedQ {
  Ensemble q;
  /// For each layout A of E: a witness for ⊓∨_F q|_{T_F} − q|_{T_A} at level |I|.
  std::vector<std::pair<Layout, Witness>> almost_fissility;
  /// A witness for ⟨ξ_I^E⟩ − q|_{(βΔE)₊} at level |I|.
  Witness boundary;
};

ConstructedQ construct_q(const WedgeContext& ctx, const PTable& table);

/// Writes manifest.json, spaces.json, one file per p_J^F and, if given,
/// q.json. Returns the written paths.
std::vector<std::string> write_artifacts(const std::filesystem::path& dir, const WedgeContext& ctx,
                                         const PTable& table, const ConstructedQ* q);

struct CheckItem {
  std::string condition;
  bool pass = false;
  std::string detail;
};

/// Rebuilds W(I), the cones and the action from scratch and re-verifies every
/// condition and witness stored under `dir`.
std::vector<CheckItem> check_artifacts(const std::filesystem::path& dir);

}  // namespace fissile
