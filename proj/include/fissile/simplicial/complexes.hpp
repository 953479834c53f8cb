#pragma once

#include <map>
#include <vector>

#include "fissile/simplicial/constructions.hpp"
#include "fissile/subset.hpp"

namespace fissile {

/// An abstract simplicial complex on vertices 0..31: its simplices as masks,
/// closed under nonempty subsets, sorted by size and then mask.
struct AbstractComplex {
  std::vector<Subset> simplices;

  bool contains(Subset s) const;
};

AbstractComplex complex_from_facets(const std::vector<Subset>& facets);
/// The full simplex on F.
AbstractComplex simplex_complex(Subset face);
bool is_subcomplex(const AbstractComplex& l, const AbstractComplex& k);
AbstractComplex intersect(const AbstractComplex& a, const AbstractComplex& b);

/// βK: the nerve of the simplices of K ordered by reverse inclusion. Vertex v
/// is the simplex K.simplices[v].
Nerve barycentric(const AbstractComplex& k, int bound);

/// ČβK with its vertices labelled by simplices of K.
struct FaceCone {
  AbstractComplex complex;
  Nerve nerve;
  Cone cone;
  SetPtr set;
  std::map<Subset, int> vertex_of_face;

  /// The face labelling a vertex, or 0 for the apex.
  Subset face_of_vertex(int v) const;
};
FaceCone make_face_cone(const AbstractComplex& k, int bound);

/// ČβL ⊆ ČβK for a subcomplex L.
Morphism face_cone_inclusion(const FaceCone& l, const FaceCone& k);
/// ρ_L^K: ČβK -> ČβL, sending vertices outside ČβL to the apex.
Morphism canonical_retraction(const FaceCone& k, const FaceCone& l);

}  // namespace fissile
