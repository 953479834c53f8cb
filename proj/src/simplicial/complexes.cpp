#include "fissile/simplicial/complexes.hpp"

#include <algorithm>
#include <set>

namespace fissile {

namespace {

bool size_then_mask(Subset a, Subset b) {
  return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
}

}  // namespace

bool AbstractComplex::contains(Subset s) const {
  return std::binary_search(simplices.begin(), simplices.end(), s, size_then_mask);
}

AbstractComplex complex_from_facets(const std::vector<Subset>& facets) {
  std::set<Subset> all;
  for (Subset f : facets) {
    for (Subset s : subsets_of(f)) {
      if (s != 0) all.insert(s);
    }
  }
  AbstractComplex k{{all.begin(), all.end()}};
  std::sort(k.simplices.begin(), k.simplices.end(), size_then_mask);
  return k;
}

AbstractComplex simplex_complex(Subset face) {
  return complex_from_facets(face == 0 ? std::vector<Subset>{} : std::vector<Subset>{face});
}

bool is_subcomplex(const AbstractComplex& l, const AbstractComplex& k) {
  return std::all_of(l.simplices.begin(), l.simplices.end(), [&](Subset s) { return k.contains(s); });
}

AbstractComplex intersect(const AbstractComplex& a, const AbstractComplex& b) {
  AbstractComplex out;
  for (Subset s : a.simplices) {
    if (b.contains(s)) out.simplices.push_back(s);
  }
  return out;
}

Nerve barycentric(const AbstractComplex& k, int bound) {
  const auto& s = k.simplices;
  return make_nerve(
      static_cast<int>(s.size()), [&](int a, int b) { return is_subset(s[b], s[a]); }, bound);
}

Subset FaceCone::face_of_vertex(int v) const {
  if (v == Cone::apex()) return 0;
  return complex.simplices.at(static_cast<std::size_t>(cone.coord(0, v).second));
}

FaceCone make_face_cone(const AbstractComplex& k, int bound) {
  FaceCone fc;
  fc.complex = k;
  fc.nerve = barycentric(k, bound);
  fc.cone = make_cone(fc.nerve.set, 0);
  fc.set = fc.cone.set;
  for (std::size_t v = 0; v < k.simplices.size(); ++v) {
    fc.vertex_of_face[k.simplices[v]] = fc.cone.index(0, 1, static_cast<int>(v));
  }
  return fc;
}

Morphism face_cone_inclusion(const FaceCone& l, const FaceCone& k) {
  std::vector<int> vmap(l.set->count(0));
  for (int v = 0; v < l.set->count(0); ++v) {
    const Subset face = l.face_of_vertex(v);
    if (face == 0) {
      vmap[v] = Cone::apex();
      continue;
    }
    auto it = k.vertex_of_face.find(face);
    if (it == k.vertex_of_face.end()) throw SimplicialError("face_cone_inclusion: not a subcomplex");
    vmap[v] = it->second;
  }
  return from_vertex_map(l.set, k.set, vmap);
}

Morphism canonical_retraction(const FaceCone& k, const FaceCone& l) {
  if (!is_subcomplex(l.complex, k.complex)) throw SimplicialError("canonical_retraction: not a subcomplex");
  std::vector<int> vmap(k.set->count(0));
  for (int v = 0; v < k.set->count(0); ++v) {
    auto it = l.vertex_of_face.find(k.face_of_vertex(v));
    vmap[v] = it == l.vertex_of_face.end() ? Cone::apex() : it->second;
  }
  return from_vertex_map(k.set, l.set, vmap);
}

}  // namespace fissile
