#include "fissile/layout_cones.hpp"

namespace fissile {

LayoutCones::LayoutCones(Subset ground, int bound) : ground_(ground), bound_(bound) {}

const FaceCone& LayoutCones::layout(const Layout& a) const {
  if (!is_subset(layout_support(a), ground_)) throw LayoutError("layout outside the ground set");
  const Key key = layout_key(a);
  auto it = cones_.find(key);
  if (it == cones_.end()) {
    it = cones_.emplace(key, std::make_unique<FaceCone>(make_face_cone(layout_complex(a), bound_))).first;
  }
  return *it->second;
}

const Morphism& LayoutCones::inclusion(const Layout& b, const Layout& a) const {
  const auto key = std::make_pair(layout_key(b), layout_key(a));
  auto it = inclusions_.find(key);
  if (it == inclusions_.end()) it = inclusions_.emplace(key, face_cone_inclusion(layout(b), layout(a))).first;
  return it->second;
}

const Morphism& LayoutCones::retraction(const Layout& a, const Layout& b) const {
  const auto key = std::make_pair(layout_key(a), layout_key(b));
  auto it = retractions_.find(key);
  if (it == retractions_.end()) it = retractions_.emplace(key, canonical_retraction(layout(a), layout(b))).first;
  return it->second;
}

const Wedge& LayoutCones::split(const Layout& a) const {
  const Key key = layout_key(a);
  auto it = splits_.find(key);
  if (it == splits_.end()) {
    std::vector<SetPtr> parts;
    for (Subset f : a.blocks) parts.push_back(face(f).set);
    it = splits_.emplace(key, std::make_unique<Wedge>(make_wedge(std::move(parts), bound_))).first;
  }
  return *it->second;
}

const Morphism& LayoutCones::to_split(const Layout& a) const {
  const Key key = layout_key(a);
  auto it = to_split_.find(key);
  if (it != to_split_.end()) return it->second;
  const FaceCone& t = layout(a);
  const Wedge& w = split(a);
  std::vector<int> vmap(t.set->count(0), 0);
  for (int v = 1; v < t.set->count(0); ++v) {
    const Subset face_mask = t.face_of_vertex(v);
    const Subset block = resolve_block(a, face_mask);
    const auto pos = static_cast<int>(std::find(a.blocks.begin(), a.blocks.end(), block) - a.blocks.begin());
    vmap[v] = w.insertion[pos][0][face(block).vertex_of_face.at(face_mask)];
  }
  return to_split_.emplace(key, from_vertex_map(t.set, w.set, vmap)).first->second;
}

Morphism LayoutCones::assemble(const Layout& a, const SetPtr& target, const std::vector<const Morphism*>& parts) const {
  return compose(glue(split(a), target, parts), to_split(a));
}

const SetPtr& LayoutCones::plus(Subset f) const {
  auto it = plus_.find(f);
  if (it == plus_.end()) it = plus_.emplace(f, make_plus(face(f).nerve.set).set).first;
  return it->second;
}

const Morphism& LayoutCones::plus_inclusion(Subset f) const {
  auto it = plus_inclusion_.find(f);
  if (it != plus_inclusion_.end()) return it->second;
  const FaceCone& t = face(f);
  const SetPtr& p = plus(f);
  std::vector<int> vmap(p->count(0));
  vmap[0] = Cone::apex();
  for (int v = 1; v < p->count(0); ++v) vmap[v] = t.cone.index(0, 1, v - 1);
  return plus_inclusion_.emplace(f, from_vertex_map(p, t.set, vmap)).first->second;
}

const Morphism& LayoutCones::plus_face_inclusion(Subset g, Subset f) const {
  const auto key = std::make_pair(g, f);
  auto it = plus_face_.find(key);
  if (it != plus_face_.end()) return it->second;
  if (!is_subset(g, f)) throw LayoutError("plus_face_inclusion: not a face");
  const FaceCone& tg = face(g);
  const FaceCone& tf = face(f);
  const SetPtr& pg = plus(g);
  const SetPtr& pf = plus(f);
  std::vector<int> vmap(pg->count(0));
  vmap[0] = 0;
  for (int v = 1; v < pg->count(0); ++v) {
    const Subset face_mask = tg.complex.simplices[v - 1];
    vmap[v] = tf.vertex_of_face.at(face_mask) - tf.cone.offset[0][1] + 1;
  }
  return plus_face_.emplace(key, from_vertex_map(pg, pf, vmap)).first->second;
}

}  // namespace fissile
