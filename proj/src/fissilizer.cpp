#include "fissile/fissilizer.hpp"

#include <algorithm>
#include <deque>

#include "fissile/simplicial/enumerate.hpp"

namespace fissile {

Key LayoutPresheaf::restrict_layout(const Layout& a, const Layout& b, const Key& tuple) const {
  const auto parts = decode_tuple(tuple);
  if (parts.size() != a.blocks.size()) throw KeyError("layout tuple has the wrong arity");
  std::vector<Key> out;
  out.reserve(b.blocks.size());
  for (Subset g : b.blocks) {
    const Subset f = resolve_block(a, g);
    const auto pos = std::find(a.blocks.begin(), a.blocks.end(), f) - a.blocks.begin();
    out.push_back(f == g ? parts[pos] : restrict_face(f, g, parts[pos]));
  }
  return encode_tuple(out);
}

Ensemble restrict_face_ensemble(const LayoutPresheaf& m, Subset from, Subset to, const Ensemble& q) {
  if (from == to) return q;
  return map_ensemble(q, [&](const Key& k) { return m.restrict_face(from, to, k); });
}

Fissilizer::Fissilizer(const LayoutPresheaf& m, Subset ground)
    : m_(&m), ground_(ground), lattice_(ground), poset_(layout_poset(lattice_)) {
  if (!is_subset(ground, m.ground())) throw LayoutError("fissilizer ground is not a face of the presheaf ground");
}

Ensemble Fissilizer::wrap(const Ensemble& q) {
  return map_ensemble(q, [](const Key& k) { return encode_tuple(std::vector<Key>{k}); });
}

Ensemble Fissilizer::unwrap(const Ensemble& q) {
  return map_ensemble(q, [](const Key& k) {
    auto parts = decode_tuple(k);
    if (parts.size() != 1) throw KeyError("expected a one-block tuple");
    return parts[0];
  });
}

Ensemble Fissilizer::q_square(const Ensemble& q, const Layout& a) const {
  std::vector<Ensemble> factors;
  for (Subset f : a.blocks) factors.push_back(restrict_face_ensemble(*m_, ground_, f, q));
  return tuple_product(factors);
}

Ensemble Fissilizer::restrict_index(int from, int to, const Ensemble& s) const {
  if (from == to) return s;
  const Layout& a = lattice_.at(from);
  const Layout& b = lattice_.at(to);
  return map_ensemble(s, [&](const Key& k) { return m_->restrict_layout(a, b, k); });
}

Ensemble Fissilizer::extend_index(int p, int q, const Ensemble& s) const {
  if (p == q) return s;
  const Layout& a = lattice_.at(p);
  const Layout& b = lattice_.at(q);
  return map_ensemble(s, [&](const Key& k) { return m_->extend(a, b, k); });
}

Ensemble Fissilizer::restrict_to_layout(const Ensemble& r, const Layout& a) const {
  return restrict_index(lattice_.top(), lattice_.index_of(a), wrap(r));
}

std::string Fissilizer::fissility_failure(const Ensemble& r) const {
  for (const auto& a : lattice_.layouts()) {
    if (restrict_to_layout(r, a) != q_square(r, a)) return "restriction differs from the combining product at " + layout_to_string(a);
  }
  return {};
}

bool Fissilizer::is_fissile(const Ensemble& r) const { return fissility_failure(r).empty(); }

Ensemble Fissilizer::fissilize(const Ensemble& q) const {
  std::vector<int> all(lattice_.size());
  std::vector<Ensemble> family(lattice_.size());
  for (int a = 0; a < lattice_.size(); ++a) {
    all[a] = a;
    family[a] = q_square(q, lattice_.at(a));
  }
  const auto restrict = [&](int p, int r, const Ensemble& s) { return restrict_index(p, r, s); };
  const auto extend = [&](int p, int r, const Ensemble& s) { return extend_index(p, r, s); };
  const auto v = nabla_inverse(poset_, all, family, restrict);
  return unwrap(extend_sum(lattice_.top(), all, v, extend));
}

CongruenceReport check_fissilizer_congruence(const Fissilizer& phi, const Ensemble& q,
                                             const std::vector<std::vector<Ensemble>>& n_generators) {
  CongruenceReport report;
  const auto& lattice = phi.lattice();
  if (static_cast<int>(n_generators.size()) != lattice.size()) {
    report.diagnostic = "hypothesis: one generator list per layout expected";
    return report;
  }
  std::vector<SubgroupLattice> n;
  for (const auto& gens : n_generators) n.emplace_back(gens);
  for (int a = 0; a < lattice.size(); ++a) {
    for (int b = 0; b < lattice.size(); ++b) {
      if (a == b || !lattice.geq(a, b)) continue;
      for (const auto& g : n_generators[a]) {
        if (!n[b].contains(phi.restrict_index(a, b, g))) {
          report.diagnostic = "hypothesis: N not preserved by restriction to " + layout_to_string(lattice.at(b));
          return report;
        }
      }
      for (const auto& g : n_generators[b]) {
        if (!n[a].contains(phi.extend_index(a, b, g))) {
          report.diagnostic = "hypothesis: N not preserved by the extender into " + layout_to_string(lattice.at(a));
          return report;
        }
      }
    }
    const Layout& layout = lattice.at(a);
    if (!n[a].contains(phi.q_square(q, layout) - phi.restrict_to_layout(q, layout))) {
      report.diagnostic = "hypothesis: Q^□(A) − Q|_A not in N(A) at " + layout_to_string(layout);
      return report;
    }
  }
  report.hypotheses_hold = true;
  const Ensemble difference = Fissilizer::wrap(phi.fissilize(q)) - Fissilizer::wrap(q);
  report.certificate = n[lattice.top()].decide(difference);
  report.conclusion_holds = report.certificate.member;
  if (!report.conclusion_holds) report.diagnostic = "conclusion: " + report.certificate.reason;
  return report;
}

std::vector<std::vector<Ensemble>> admissible_closure(const Fissilizer& phi,
                                                      std::vector<std::vector<Ensemble>> seeds) {
  const auto& lattice = phi.lattice();
  seeds.resize(lattice.size());
  std::vector<SubgroupLattice> n(lattice.size());
  std::vector<std::vector<Ensemble>> out(lattice.size());
  std::deque<std::pair<int, Ensemble>> pending;
  for (int a = 0; a < lattice.size(); ++a) {
    for (auto& g : seeds[a]) pending.emplace_back(a, std::move(g));
  }
  std::size_t steps = 0;
  while (!pending.empty()) {
    if (++steps > 200000) throw GuardExceeded("admissible_closure did not stabilize");
    auto [a, g] = std::move(pending.front());
    pending.pop_front();
    if (g.is_zero() || n[a].contains(g)) continue;
    n[a].add(g);
    out[a].push_back(g);
    for (int b = 0; b < lattice.size(); ++b) {
      if (b == a) continue;
      if (lattice.geq(a, b)) pending.emplace_back(b, phi.restrict_index(a, b, g));
      if (lattice.geq(b, a)) pending.emplace_back(b, phi.extend_index(b, a, g));
    }
  }
  return out;
}

LabellingPresheaf::LabellingPresheaf(Subset ground, int labels, bool on_faces)
    : ground_(ground), labels_(labels), on_faces_(on_faces) {
  if (labels < 1) throw DomainError("labelling presheaf needs at least one label");
}

std::vector<Subset> LabellingPresheaf::cells(Subset f) const {
  std::vector<Subset> out;
  if (on_faces_) {
    for (Subset s : subsets_of(f)) {
      if (s != 0) out.push_back(s);
    }
  } else {
    for (int e : elements(f)) out.push_back(Subset{1} << e);
  }
  return out;
}

Key LabellingPresheaf::restrict_face(Subset from, Subset to, const Key& m) const {
  const auto labels = decode_ints(m);
  const auto big = cells(from);
  std::vector<int> out;
  for (Subset c : cells(to)) out.push_back(labels.at(std::find(big.begin(), big.end(), c) - big.begin()));
  return encode_ints(out);
}

Key LabellingPresheaf::extend(const Layout& a, const Layout& b, const Key& tuple) const {
  const auto parts = decode_tuple(tuple);
  std::vector<std::vector<int>> labels;
  for (const auto& p : parts) labels.push_back(decode_ints(p));
  std::vector<Key> out;
  for (Subset f : a.blocks) {
    std::vector<int> mine;
    for (Subset c : cells(f)) {
      int value = 0;
      for (std::size_t j = 0; j < b.blocks.size(); ++j) {
        if (!is_subset(c, b.blocks[j])) continue;
        const auto small = cells(b.blocks[j]);
        value = labels[j].at(std::find(small.begin(), small.end(), c) - small.begin());
      }
      mine.push_back(value);
    }
    out.push_back(encode_ints(mine));
  }
  return encode_tuple(out);
}

Key LabellingPresheaf::sample(Subset f, std::mt19937_64& rng) const {
  std::uniform_int_distribution<int> pick(0, labels_ - 1);
  std::vector<int> out;
  for (std::size_t i = 0; i < cells(f).size(); ++i) out.push_back(pick(rng));
  return encode_ints(out);
}

SimplicialModelPresheaf::SimplicialModelPresheaf(Subset ground, SetPtr z) : cones_(ground, z->bound()), z_(std::move(z)) {
  if (!z_->based()) throw SimplicialError("simplicial model target must be based");
  if (z_->bound() < popcount(ground)) throw SimplicialError("simplicial model target is truncated below dim ČβΔE");
}

Key SimplicialModelPresheaf::restrict_face(Subset from, Subset to, const Key& m) const {
  const auto v = morphism_from_key(cones_.face(from).set, z_, m);
  return morphism_key(compose(v, cones_.inclusion(top_layout(to), top_layout(from))));
}

Morphism SimplicialModelPresheaf::tuple_to_morphism(const Layout& a, const Key& tuple) const {
  const auto parts = decode_tuple(tuple);
  if (parts.size() != a.blocks.size()) throw KeyError("layout tuple has the wrong arity");
  std::vector<Morphism> maps;
  for (std::size_t j = 0; j < parts.size(); ++j) maps.push_back(morphism_from_key(cones_.face(a.blocks[j]).set, z_, parts[j]));
  std::vector<const Morphism*> ptrs;
  for (const auto& m : maps) ptrs.push_back(&m);
  return cones_.assemble(a, z_, ptrs);
}

Key SimplicialModelPresheaf::morphism_to_tuple(const Layout& a, const Morphism& m) const {
  std::vector<Key> parts;
  for (Subset f : a.blocks) parts.push_back(morphism_key(compose(m, cones_.inclusion(top_layout(f), a))));
  return encode_tuple(parts);
}

Key SimplicialModelPresheaf::extend(const Layout& a, const Layout& b, const Key& tuple) const {
  const Morphism vb = tuple_to_morphism(b, tuple);
  return morphism_to_tuple(a, compose(vb, cones_.retraction(a, b)));
}

Key SimplicialModelPresheaf::sample(Subset f, std::mt19937_64& rng) const {
  auto it = all_.find(f);
  if (it == all_.end()) it = all_.emplace(f, enumerate_based_morphisms(cones_.face(f).set, z_)).first;
  std::uniform_int_distribution<std::size_t> pick(0, it->second.size() - 1);
  return morphism_key(it->second[pick(rng)]);
}

}  // namespace fissile
