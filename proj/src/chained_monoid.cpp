#include "fissile/chained_monoid.hpp"

#include <algorithm>
#include <mutex>

#include "fissile/simplicial/serialize.hpp"
#include "fissile/subgroup.hpp"

namespace fissile {

namespace {

bool same_set(const SetPtr& a, const SetPtr& b) { return a.get() == b.get() || same_tables(*a, *b); }

}  // namespace

Ensemble subset_element(Subset k) { return Ensemble::singleton(subset_key(k)); }

Ensemble omega(Subset j) {
  Ensemble out;
  for (Subset k : subsets_of(j)) out.add(subset_key(k), (popcount(j) - popcount(k)) % 2 ? -1 : 1);
  return out;
}

Ensemble ring_product(const Ensemble& a, const Ensemble& b) {
  Ensemble out;
  for (const auto& [ka, ca] : a.terms()) {
    const Subset x = subset_from_key(ka);
    for (const auto& [kb, cb] : b.terms()) out.add(subset_key(x & subset_from_key(kb)), ca * cb);
  }
  return out;
}

std::vector<IdealGenerator> ideal_generators(Subset ground, int level) {
  std::vector<IdealGenerator> out;
  for (Subset l : subsets_of(ground)) {
    for (Subset j : subsets_of(l)) {
      if (popcount(j) >= level) out.push_back({l, j});
    }
  }
  return out;
}

Ensemble generator_value(const IdealGenerator& g) { return ring_product(subset_element(g.l), omega(g.j)); }

namespace {

struct IdealLattice {
  std::vector<IdealGenerator> generators;
  SubgroupLattice lattice;
};

const IdealLattice& ideal_lattice(Subset ground, int level) {
  static std::mutex mutex;
  static std::map<std::pair<Subset, int>, std::unique_ptr<IdealLattice>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{ground, level}];
  if (!slot) {
    slot = std::make_unique<IdealLattice>();
    slot->generators = ideal_generators(ground, level);
    std::vector<Ensemble> values;
    for (const auto& g : slot->generators) values.push_back(generator_value(g));
    slot->lattice = SubgroupLattice(values);
  }
  return *slot;
}

std::string ring_element_failure(const Ensemble& pi, Subset ground) {
  for (const auto& [key, c] : pi.terms()) {
    try {
      if (!is_subset(subset_from_key(key), ground)) return "monoid ring term outside P(I)";
    } catch (const KeyError&) {
      return "monoid ring term is not a subset key";
    }
  }
  return {};
}

}  // namespace

IdealCertificate ideal_membership(const Ensemble& pi, Subset ground, int level) {
  IdealCertificate out;
  if (auto why = ring_element_failure(pi, ground); !why.empty()) {
    out.reason = why;
    return out;
  }
  const auto& ideal = ideal_lattice(ground, std::max(level, 0));
  const Membership m = ideal.lattice.decide(pi);
  out.member = m.member;
  out.reason = m.reason;
  if (!m.member) return out;
  for (std::size_t i = 0; i < m.coefficients.size(); ++i) {
    if (!m.coefficients[i].is_zero()) out.terms.emplace_back(m.coefficients[i], ideal.generators[i]);
  }
  return out;
}

std::string ideal_certificate_failure(const Ensemble& pi, Subset ground, int level, const IdealCertificate& c) {
  if (!c.member) return "certificate claims non-membership";
  Ensemble sum;
  for (const auto& [coeff, g] : c.terms) {
    if (!is_subset(g.l, ground) || !is_subset(g.j, ground)) return "ideal generator outside P(I)";
    if (popcount(g.j) < level) return "ideal generator ω_J with |J| below the level";
    sum += coeff * generator_value(g);
  }
  if (sum != pi) return "ideal certificate does not reproduce π";
  return {};
}

std::string action_failure(const MonoidAction& a) {
  if (a.maps.size() != static_cast<std::size_t>(a.ground) + 1 || a.ground != full_set(popcount(a.ground))) {
    return "action must list K_(Z) for every K ⊆ I";
  }
  for (Subset k = 0; k <= a.ground; ++k) {
    const Morphism& m = a.of(k);
    if (!same_set(m.source, a.space) || !same_set(m.target, a.space)) return "action map has the wrong ends";
    if (auto why = check_morphism(m); !why.empty()) return "action map " + subset_to_string(k) + ": " + why;
  }
  if (!same_map(a.of(a.ground), identity_morphism(a.space))) return "I does not act as the identity";
  for (Subset k = 0; k <= a.ground; ++k) {
    for (Subset l = 0; l <= a.ground; ++l) {
      if (!same_map(a.of(k & l), compose(a.of(k), a.of(l)))) {
        return "action law fails for " + subset_to_string(k) + " and " + subset_to_string(l);
      }
    }
  }
  return {};
}

MonoidAction cone_action(const MonoidAction& a, const ReducedCone& cone) {
  MonoidAction out{a.ground, cone.set, {}};
  for (const auto& m : a.maps) out.maps.push_back(reduced_cone_map(cone, cone, m));
  return out;
}

Morphism act(const MonoidAction& a, Subset k, const Morphism& v) { return compose(a.of(k), v); }

Ensemble act(const MonoidAction& a, Subset k, const SetPtr& t, const Ensemble& e) {
  return map_ensemble(e, [&](const Key& key) { return morphism_key(act(a, k, morphism_from_key(t, a.space, key))); });
}

Ensemble act_ring(const MonoidAction& a, const Ensemble& pi, const Morphism& v) {
  Ensemble out;
  for (const auto& [key, c] : pi.terms()) out.add(morphism_key(act(a, subset_from_key(key), v)), c);
  return out;
}

bool is_equivariant(const MonoidAction& from, const MonoidAction& to, const Morphism& h,
                    const std::vector<std::vector<char>>* domain) {
  for (Subset k = 0; k <= from.ground; ++k) {
    const Morphism& kf = from.of(k);
    const Morphism& kt = to.of(k);
    for (std::size_t n = 0; n < h.map.size(); ++n) {
      for (std::size_t x = 0; x < h.map[n].size(); ++x) {
        if (domain && !(*domain)[n][x]) continue;
        const int moved = kf.map[n][x];
        if (domain && !(*domain)[n][moved]) return false;
        const int image = h.map[n][x];
        if (image < 0 || h.map[n][moved] < 0) return false;
        if (h.map[n][moved] != kt.map[n][image]) return false;
      }
    }
  }
  return true;
}

Ensemble precompose(const Ensemble& e, const SetPtr& z, const Morphism& k) {
  return map_ensemble(e, [&](const Key& key) { return morphism_key(compose(morphism_from_key(k.target, z, key), k)); });
}

Ensemble postcompose(const Ensemble& e, const SetPtr& t, const Morphism& h) {
  return map_ensemble(e, [&](const Key& key) { return morphism_key(compose(h, morphism_from_key(t, h.source, key))); });
}

Ensemble wedge_product(const Wedge& w, const SetPtr& z, const std::vector<Ensemble>& parts) {
  if (parts.size() != w.parts.size()) throw SimplicialError("wedge_product: arity mismatch");
  std::vector<std::map<Key, Morphism>> decoded(parts.size());
  for (std::size_t j = 0; j < parts.size(); ++j) {
    for (const auto& [key, c] : parts[j].terms()) decoded[j].emplace(key, morphism_from_key(w.parts[j], z, key));
  }
  std::vector<const Morphism*> maps(parts.size());
  return combining_product(std::span<const Ensemble>(parts), [&](std::span<const Key> keys) {
    for (std::size_t j = 0; j < keys.size(); ++j) maps[j] = &decoded[j].at(keys[j]);
    return morphism_key(glue(w, z, maps));
  });
}

int Block::rank() const {
  int r = 0;
  for (const auto& p : parts) r += p.rank;
  return r;
}

Witness& Witness::operator+=(const Witness& other) {
  if (!source) source = other.source;
  if (!action) action = other.action;
  if (!other.blocks.empty() || other.level != kAnyLevel) level = std::min(level, other.level);
  blocks.insert(blocks.end(), other.blocks.begin(), other.blocks.end());
  return *this;
}

Witness& Witness::operator-=(const Witness& other) {
  const std::size_t start = blocks.size();
  *this += other;
  for (std::size_t i = start; i < blocks.size(); ++i) blocks[i].first = -blocks[i].first;
  return *this;
}

Witness& Witness::operator*=(const Integer& c) {
  if (c.is_zero()) blocks.clear();
  for (auto& b : blocks) b.first *= c;
  return *this;
}

Ensemble evaluate_part(const MonoidAction& a, const BlockPart& part) {
  Ensemble out;
  for (const auto& t : part.terms) out += act_ring(a, t.pi, t.w);
  return out;
}

Ensemble evaluate_block(const MonoidAction& a, const Block& b) {
  std::vector<Ensemble> parts;
  for (const auto& p : b.parts) parts.push_back(evaluate_part(a, p));
  return precompose(wedge_product(*b.wedge, a.space, parts), a.space, b.f);
}

Ensemble evaluate(const Witness& w) {
  Ensemble out;
  for (const auto& [c, b] : w.blocks) out += c * evaluate_block(*w.action, b);
  return out;
}

WitnessTerm make_term(const Ensemble& pi, Subset ground, int rank, Morphism w) {
  WitnessTerm t{pi, ideal_membership(pi, ground, rank), std::move(w)};
  if (!t.certificate.member) throw std::invalid_argument("make_term: π is not in the ideal of the requested rank");
  return t;
}

std::pair<Ensemble, Block> make_block(const MonoidAction& a, std::shared_ptr<const Wedge> wedge, Morphism f,
                                      std::vector<BlockPart> parts) {
  if (!same_set(f.target, wedge->set)) throw SimplicialError("make_block: f does not land in the wedge of the parts");
  if (parts.size() != wedge->parts.size()) throw SimplicialError("make_block: part count differs from the wedge");
  for (std::size_t j = 0; j < parts.size(); ++j) {
    for (const auto& t : parts[j].terms) {
      if (auto why = ideal_certificate_failure(t.pi, a.ground, parts[j].rank, t.certificate); !why.empty()) {
        throw std::invalid_argument("make_block: " + why);
      }
    }
  }
  f.target = wedge->set;
  Block b{std::move(wedge), std::move(f), std::move(parts)};
  Ensemble v = evaluate_block(a, b);
  return {std::move(v), std::move(b)};
}

std::string witness_failure(const Ensemble& v, const Witness& w, int s, const std::vector<std::vector<char>>* support) {
  if (!w.blocks.empty() && (!w.source || !w.action)) return "witness has no source or action";
  if (w.level < s) return "claimed level " + std::to_string(w.level) + " is below " + std::to_string(s);
  for (std::size_t bi = 0; bi < w.blocks.size(); ++bi) {
    const auto& [c, b] = w.blocks[bi];
    const std::string at = "block " + std::to_string(bi) + ": ";
    if (b.rank() < s || b.rank() < w.level) return at + "rank " + std::to_string(b.rank()) + " is too small";
    if (!b.wedge || b.parts.size() != b.wedge->parts.size()) return at + "parts do not match the wedge";
    if (!same_set(b.f.source, w.source) || !same_set(b.f.target, b.wedge->set)) return at + "f has the wrong ends";
    if (auto why = check_morphism(b.f); !why.empty()) return at + "f is not a based morphism: " + why;
    for (std::size_t j = 0; j < b.parts.size(); ++j) {
      const auto& part = b.parts[j];
      if (!same_set(part.domain, b.wedge->parts[j])) return at + "part domain differs from the wedge part";
      for (const auto& t : part.terms) {
        if (auto why = ideal_certificate_failure(t.pi, w.action->ground, part.rank, t.certificate); !why.empty()) {
          return at + why;
        }
        if (!same_set(t.w.source, part.domain) || !same_set(t.w.target, w.action->space)) {
          return at + "term morphism has the wrong ends";
        }
        if (auto why = check_morphism(t.w); !why.empty()) return at + "term is not a based morphism: " + why;
        if (support && !lands_in(t.w, *support)) return at + "term leaves the invariant subset";
      }
    }
  }
  if (evaluate(w) != v) return "sum mismatch";
  return {};
}

Witness trivial_witness(const Ensemble& v, const SetPtr& source, std::shared_ptr<const MonoidAction> a) {
  Witness out{source, a, kAnyLevel, {}};
  if (v.is_zero()) return out;
  out.level = 0;
  auto wedge = std::make_shared<const Wedge>(make_wedge({source}, source->bound()));
  BlockPart part{source, 0, {}};
  for (const auto& [key, c] : v.terms()) {
    part.terms.push_back(make_term(c * subset_element(a->ground), a->ground, 0, morphism_from_key(source, a->space, key)));
  }
  auto [value, block] = make_block(*a, wedge, wedge->insertion_morphism(0), {std::move(part)});
  out.blocks.emplace_back(1, std::move(block));
  return out;
}

Witness single_term_witness(const Ensemble& pi, const Morphism& v, int rank, std::shared_ptr<const MonoidAction> a) {
  Witness out{v.source, a, rank, {}};
  auto wedge = std::make_shared<const Wedge>(make_wedge({v.source}, v.source->bound()));
  BlockPart part{v.source, rank, {make_term(pi, a->ground, rank, v)}};
  auto [value, block] = make_block(*a, wedge, wedge->insertion_morphism(0), {std::move(part)});
  out.blocks.emplace_back(1, std::move(block));
  return out;
}

Witness restrict_witness(const Witness& w, const Morphism& k) {
  if (w.source && !same_set(k.target, w.source)) throw SimplicialError("restrict_witness: k does not land in the source");
  Witness out{k.source, w.action, w.level, {}};
  for (const auto& [c, b] : w.blocks) {
    Block moved = b;
    moved.f = compose(b.f, k);
    out.blocks.emplace_back(c, std::move(moved));
  }
  return out;
}

Witness map_witness(const Witness& w, const Morphism& h, std::shared_ptr<const MonoidAction> to,
                    const std::vector<std::vector<char>>* domain) {
  Witness out{w.source, to, w.level, {}};
  if (w.blocks.empty()) return out;
  if (!same_set(h.source, w.action->space) || !same_set(h.target, to->space)) throw SimplicialError("map_witness: h has the wrong ends");
  if (!is_equivariant(*w.action, *to, h, domain)) throw SimplicialError("map_witness: h is not equivariant");
  for (const auto& [c, b] : w.blocks) {
    Block moved = b;
    for (auto& part : moved.parts) {
      for (auto& t : part.terms) {
        if (domain && !lands_in(t.w, *domain)) throw SimplicialError("map_witness: term leaves the domain of h");
        t.w = compose(h, t.w);
      }
    }
    out.blocks.emplace_back(c, std::move(moved));
  }
  return out;
}

namespace {

Morphism invert(const Morphism& e) {
  Morphism inv{e.target, e.source, {}};
  inv.map.resize(e.map.size());
  for (std::size_t n = 0; n < e.map.size(); ++n) {
    if (static_cast<int>(e.map[n].size()) != e.target->count(static_cast<int>(n))) {
      throw SimplicialError("cone of a wedge is not the wedge of cones");
    }
    inv.map[n].assign(e.map[n].size(), -1);
    for (std::size_t x = 0; x < e.map[n].size(); ++x) {
      int& slot = inv.map[n][e.map[n][x]];
      if (slot >= 0) throw SimplicialError("cone of a wedge is not the wedge of cones");
      slot = static_cast<int>(x);
    }
  }
  return inv;
}

}  // namespace

Witness cone_witness(const Witness& w, const ReducedCone& source_cone, const ReducedCone& target_cone,
                     std::shared_ptr<const MonoidAction> cone_act) {
  Witness out{source_cone.set, cone_act, w.level, {}};
  if (w.blocks.empty()) return out;
  if (!same_set(source_cone.base, w.source)) throw SimplicialError("cone_witness: cone of the wrong source");
  if (!same_set(target_cone.base, w.action->space)) throw SimplicialError("cone_witness: cone of the wrong target");
  if (!same_set(cone_act->space, target_cone.set)) throw SimplicialError("cone_witness: action on the wrong cone");

  std::map<const SimplicialSet*, std::shared_ptr<ReducedCone>> part_cones;
  struct Lifted {
    std::shared_ptr<ReducedCone> split_cone;  // č(∨T_j)
    std::shared_ptr<const Wedge> wedge;       // ∨ čT_j
    Morphism e_inverse;
  };
  std::map<const Wedge*, Lifted> lifted;

  for (const auto& [c, b] : w.blocks) {
    auto it = lifted.find(b.wedge.get());
    if (it == lifted.end()) {
      Lifted l;
      std::vector<SetPtr> cones;
      std::vector<std::shared_ptr<ReducedCone>> pieces;
      for (const auto& d : b.wedge->parts) {
        auto& slot = part_cones[d.get()];
        if (!slot) slot = std::make_shared<ReducedCone>(make_reduced_cone(d));
        pieces.push_back(slot);
        cones.push_back(slot->set);
      }
      l.wedge = std::make_shared<const Wedge>(make_wedge(cones, source_cone.set->bound()));
      l.split_cone = std::make_shared<ReducedCone>(make_reduced_cone(b.wedge->set));
      std::vector<Morphism> legs;
      for (std::size_t j = 0; j < pieces.size(); ++j) {
        legs.push_back(reduced_cone_map(*pieces[j], *l.split_cone, b.wedge->insertion_morphism(static_cast<int>(j))));
      }
      std::vector<const Morphism*> ptrs;
      for (const auto& m : legs) ptrs.push_back(&m);
      l.e_inverse = invert(glue(*l.wedge, l.split_cone->set, ptrs));
      it = lifted.emplace(b.wedge.get(), std::move(l)).first;
    }
    const Lifted& l = it->second;
    Block moved;
    moved.wedge = l.wedge;
    moved.f = compose(l.e_inverse, reduced_cone_map(source_cone, *l.split_cone, b.f));
    for (std::size_t j = 0; j < b.parts.size(); ++j) {
      const auto& cone = *part_cones.at(b.wedge->parts[j].get());
      BlockPart part{cone.set, b.parts[j].rank, {}};
      for (const auto& t : b.parts[j].terms) {
        part.terms.push_back({t.pi, t.certificate, reduced_cone_map(cone, target_cone, t.w)});
      }
      moved.parts.push_back(std::move(part));
    }
    out.blocks.emplace_back(c, std::move(moved));
  }
  return out;
}

Witness wedge_witness(const std::vector<const Witness*>& parts, const Wedge& sources) {
  if (parts.size() != sources.parts.size()) throw SimplicialError("wedge_witness: arity mismatch");
  Witness out{sources.set, nullptr, 0, {}};
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Witness& w = *parts[i];
    if (w.source && !same_set(w.source, sources.parts[i])) throw SimplicialError("wedge_witness: source mismatch");
    if (!out.action) out.action = w.action;
    if (w.blocks.empty()) {
      out.level = kAnyLevel;
      out.blocks.clear();
      return out;
    }
    out.level += w.level;
  }

  std::vector<std::size_t> choice(parts.size(), 0);
  const int bound = sources.set->bound();
  while (true) {
    Integer coeff = 1;
    std::vector<SetPtr> domains;
    Block block;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto& [c, b] = parts[i]->blocks[choice[i]];
      coeff *= c;
      for (const auto& p : b.parts) {
        domains.push_back(p.domain);
        block.parts.push_back(p);
      }
    }
    block.wedge = std::make_shared<const Wedge>(make_wedge(domains, bound));
    std::vector<Morphism> legs;
    int offset = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const Block& b = parts[i]->blocks[choice[i]].second;
      std::vector<Morphism> ins;
      for (std::size_t j = 0; j < b.parts.size(); ++j) ins.push_back(block.wedge->insertion_morphism(offset + static_cast<int>(j)));
      offset += static_cast<int>(b.parts.size());
      std::vector<const Morphism*> ptrs;
      for (const auto& m : ins) ptrs.push_back(&m);
      legs.push_back(compose(glue(*b.wedge, block.wedge->set, ptrs), b.f));
    }
    std::vector<const Morphism*> ptrs;
    for (const auto& m : legs) ptrs.push_back(&m);
    block.f = glue(sources, block.wedge->set, ptrs);
    out.blocks.emplace_back(coeff, std::move(block));

    std::size_t i = 0;
    for (; i < parts.size(); ++i) {
      if (++choice[i] < parts[i]->blocks.size()) break;
      choice[i] = 0;
    }
    if (i == parts.size()) break;
  }
  return out;
}

int SpaceTable::id(const SetPtr& s) {
  if (auto it = by_pointer_.find(s.get()); it != by_pointer_.end()) return it->second;
  std::string shape;
  for (int c : s->counts()) shape += std::to_string(c) + ",";
  shape += s->based() ? std::to_string(s->basepoint()) : "-";
  auto& candidates = by_shape_[shape];
  for (int i : candidates) {
    if (same_tables(*spaces_[i], *s)) {
      by_pointer_[s.get()] = i;
      return i;
    }
  }
  const int i = static_cast<int>(spaces_.size());
  spaces_.push_back(s);
  candidates.push_back(i);
  by_pointer_[s.get()] = i;
  return i;
}

nlohmann::json SpaceTable::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : spaces_) out.push_back(set_to_json(*s));
  return out;
}

std::vector<SetPtr> SpaceTable::from_json(const nlohmann::json& j) {
  std::vector<SetPtr> out;
  for (const auto& s : j) out.push_back(set_from_json(s));
  return out;
}

nlohmann::json witness_to_json(const Witness& w, SpaceTable& spaces) {
  nlohmann::json out;
  out["level"] = w.level == kAnyLevel ? nlohmann::json(nullptr) : nlohmann::json(w.level);
  out["blocks"] = nlohmann::json::array();
  for (const auto& [c, b] : w.blocks) {
    nlohmann::json block;
    block["coeff"] = to_string(c);
    block["f"] = to_base64(morphism_key(b.f));
    block["parts"] = nlohmann::json::array();
    for (const auto& p : b.parts) {
      nlohmann::json part;
      part["domain"] = spaces.id(p.domain);
      part["rank"] = p.rank;
      part["terms"] = nlohmann::json::array();
      for (const auto& t : p.terms) {
        nlohmann::json cert = nlohmann::json::array();
        for (const auto& [coeff, g] : t.certificate.terms) {
          cert.push_back({{"coeff", to_string(coeff)}, {"l", subset_to_json(g.l)}, {"omega", subset_to_json(g.j)}});
        }
        part["terms"].push_back({{"pi", to_json(t.pi)}, {"certificate", cert}, {"w", to_base64(morphism_key(t.w))}});
      }
      block["parts"].push_back(part);
    }
    out["blocks"].push_back(block);
  }
  return out;
}

Witness witness_from_json(const nlohmann::json& j, const SetPtr& source, std::shared_ptr<const MonoidAction> a,
                          const std::vector<SetPtr>& spaces) {
  Witness out{source, a, j.at("level").is_null() ? kAnyLevel : j.at("level").get<int>(), {}};
  for (const auto& bj : j.at("blocks")) {
    Block b;
    std::vector<SetPtr> domains;
    for (const auto& pj : bj.at("parts")) {
      const SetPtr& d = spaces.at(pj.at("domain").get<std::size_t>());
      domains.push_back(d);
      BlockPart part{d, pj.at("rank").get<int>(), {}};
      for (const auto& tj : pj.at("terms")) {
        IdealCertificate cert{true, {}, {}};
        for (const auto& cj : tj.at("certificate")) {
          cert.terms.emplace_back(integer_from_string(cj.at("coeff").get<std::string>()),
                                  IdealGenerator{subset_from_json(cj.at("l")), subset_from_json(cj.at("omega"))});
        }
        part.terms.push_back({ensemble_from_json(tj.at("pi")), std::move(cert),
                              morphism_from_key(d, a->space, from_base64(tj.at("w").get<std::string>()))});
      }
      b.parts.push_back(std::move(part));
    }
    b.wedge = std::make_shared<const Wedge>(make_wedge(domains, source->bound()));
    b.f = morphism_from_key(source, b.wedge->set, from_base64(bj.at("f").get<std::string>()));
    out.blocks.emplace_back(integer_from_string(bj.at("coeff").get<std::string>()), std::move(b));
  }
  return out;
}

}  // namespace fissile
