#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "fissile/simplicial/simplicial_set.hpp"

namespace fissile {

SetPtr point_set(int bound);
SetPtr empty_set(int bound);

/// The nerve of a finite poset: n-simplices are weakly increasing chains of
/// length n+1. Vertex v is element v.
struct Nerve {
  SetPtr set;
  std::vector<std::vector<std::vector<int>>> chains;  // chains[n][x]
};
Nerve make_nerve(int elements, const std::function<bool(int, int)>& leq, int bound);

/// The Kan cone C^s U, side 0 for Č (apex vertices first) and 1 for Ĉ (base
/// vertices first). The n-simplex (k, y) has k base vertices and y in
/// U_{k-1}; k = 0 is the apex summand. Index 0 of every dimension is the
/// apex simplex, so the apex is vertex 0.
struct Cone {
  SetPtr base;
  int side = 0;
  SetPtr set;
  std::vector<std::vector<int>> offset;  // offset[n][k] for k >= 1
  std::vector<std::vector<int>> base_count;  // base_count[n][x] = k
  std::vector<std::vector<int>> base_part;   // base_part[n][x] = y, or -1

  int index(int n, int k, int y) const { return k == 0 ? 0 : offset[n][k] + y; }
  std::pair<int, int> coord(int n, int x) const { return {base_count[n][x], base_part[n][x]}; }
  static constexpr int apex() { return 0; }
  /// U -> C^s U, y |-> (n+1, y).
  Morphism inclusion() const;
  /// C^s U -> Δ¹.
  Morphism projection(const SetPtr& interval) const;
};
Cone make_cone(const SetPtr& base, int side, int bound);
Cone make_cone(const SetPtr& base, int side);

/// Δ¹ as the nerve of {0 < 1}.
SetPtr interval_set(int bound);

/// C^s f for f: a.base -> b.base.
Morphism cone_map(const Cone& a, const Cone& b, const Morphism& f);

/// X/Y for a simplicial subset Y; index 0 of every dimension is the collapsed
/// simplex. X/∅ is X₊.
struct Quotient {
  SetPtr whole;
  SetPtr set;
  std::vector<std::vector<int>> to_quotient;
  std::vector<std::vector<int>> from_quotient;  // -1 at the collapsed simplex

  Morphism projection() const;
};
Quotient make_quotient(const SetPtr& whole, const std::vector<std::vector<char>>& sub);
Quotient make_plus(const SetPtr& u);

/// X/Y -> X'/Y' induced by f: X -> X' with f(Y) ⊆ Y'.
Morphism quotient_map(const Quotient& a, const Quotient& b, const Morphism& f);

/// The reduced cone čT = ČT / Č(♮).
struct ReducedCone {
  SetPtr base;
  Cone cone;
  Quotient quotient;
  SetPtr set;

  /// T ⊆ čT.
  Morphism inclusion() const;
  /// Simplex of čT at cone coordinate (k, y); the collapsed simplex when y
  /// lies on the basepoint.
  int index(int n, int k, int y) const { return quotient.to_quotient[n][cone.index(n, k, y)]; }
};
ReducedCone make_reduced_cone(const SetPtr& based);
/// č f for a based f: a.base -> b.base.
Morphism reduced_cone_map(const ReducedCone& a, const ReducedCone& b, const Morphism& f);

/// The Kan suspension Σ̂U = ĈU / U with top vertex and basepoint.
struct Suspension {
  SetPtr base;
  Cone cone;
  Quotient quotient;
  SetPtr set;

  int top() const { return quotient.to_quotient[0][Cone::apex()]; }
  /// q: ĈU -> Σ̂U.
  Morphism projection() const { return quotient.projection(); }
};
Suspension make_suspension(const SetPtr& base);
/// Σ̂ f for f: a.base -> b.base.
Morphism suspension_map(const Suspension& a, const Suspension& b, const Morphism& f);

/// The thick simplex EA over a list of letters; n-simplices are words of
/// length n+1, indexed in lexicographic (mixed radix) order.
struct ThickSimplex {
  std::vector<int> alphabet;
  SetPtr set;

  std::vector<int> word(int n, int x) const;  // letter positions
  int index(const std::vector<int>& word) const;
};
ThickSimplex make_thick_simplex(std::vector<int> alphabet, int bound);
/// E of the inclusion of alphabets (letters matched by value).
Morphism thick_map(const ThickSimplex& a, const ThickSimplex& b);

/// A wedge of based parts with insertions. Index 0 of every dimension is the
/// common basepoint simplex; the non-basepoint simplices of each part follow
/// in part order.
struct Wedge {
  std::vector<SetPtr> parts;
  SetPtr set;
  std::vector<std::vector<std::vector<int>>> insertion;       // [part][n][x]
  std::vector<std::vector<std::pair<int, int>>> located;      // [n][x] -> (part, x'), (-1, -1) at ∗

  Morphism insertion_morphism(int part) const;
};
Wedge make_wedge(std::vector<SetPtr> parts, int bound);

/// ∨ f_j : ∨ a_j -> ∨ b_j.
Morphism wedge_map(const Wedge& a, const Wedge& b, const std::vector<Morphism>& maps);
/// The morphism ∨ T_j -> Z restricting to v_j on part j.
Morphism glue(const Wedge& w, const SetPtr& target, const std::vector<const Morphism*>& maps);

}  // namespace fissile
