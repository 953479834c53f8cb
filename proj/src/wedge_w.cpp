#include "fissile/wedge_w.hpp"

#include <algorithm>
#include <fstream>

#include "fissile/identities.hpp"
#include "fissile/posets.hpp"
#include "fissile/simplicial/contraction.hpp"

namespace fissile {

namespace {

int sign(int e) { return e % 2 ? -1 : 1; }

Support mask_of(const SimplicialSet& s, char value) {
  Support out(s.bound() + 1);
  for (int n = 0; n <= s.bound(); ++n) out[n].assign(s.count(n), value);
  return out;
}

bool preserves(const Morphism& m, const Support& support) {
  for (std::size_t n = 0; n < m.map.size(); ++n) {
    for (std::size_t x = 0; x < m.map[n].size(); ++x) {
      if (support[n][x] && !support[n][m.map[n][x]]) return false;
    }
  }
  return true;
}

}  // namespace

int WedgeW::top_vertex(Subset j) const { return wedge->insertion.at(j)[0][components.at(j).top()]; }

Support WedgeW::support(Subset l) const {
  Support out = mask_of(*set, 0);
  for (int n = 0; n <= bound; ++n) {
    for (int x = 0; x < set->count(n); ++x) {
      const int part = wedge->located[n][x].first;
      out[n][x] = part < 0 || is_subset(static_cast<Subset>(part), l);
    }
  }
  return out;
}

Support WedgeW::proper_support() const {
  Support out = mask_of(*set, 0);
  for (int n = 0; n <= bound; ++n) {
    for (int x = 0; x < set->count(n); ++x) {
      const int part = wedge->located[n][x].first;
      out[n][x] = part < 0 || static_cast<Subset>(part) != ground;
    }
  }
  return out;
}

WedgeW build_w(Subset ground, int bound) {
  const long cap = env_guard("FISSILE_MAX_W_GROUND", 3);
  if (popcount(ground) > cap) {
    throw GuardExceeded("build_w: |I| = " + std::to_string(popcount(ground)) + " exceeds " + std::to_string(cap));
  }
  if (ground != full_set(popcount(ground))) throw std::invalid_argument("build_w: I must be {0, ..., n-1}");
  WedgeW w;
  w.ground = ground;
  w.bound = bound;
  std::vector<SetPtr> parts;
  for (Subset j = 0; j <= ground; ++j) {
    w.thick.push_back(make_thick_simplex(elements(ground & ~j), bound));
    w.components.push_back(make_suspension(w.thick.back().set));
    parts.push_back(w.components.back().set);
  }
  w.wedge = std::make_shared<const Wedge>(make_wedge(parts, bound));
  w.set = w.wedge->set;

  auto action = std::make_shared<MonoidAction>();
  action->ground = ground;
  action->space = w.set;
  for (Subset k = 0; k <= ground; ++k) {
    std::vector<Morphism> legs;
    for (Subset j = 0; j <= ground; ++j) {
      const Subset target = k & j;
      const Morphism r = suspension_map(w.components[j], w.components[target], thick_map(w.thick[j], w.thick[target]));
      legs.push_back(compose(w.wedge->insertion_morphism(static_cast<int>(target)), r));
    }
    std::vector<const Morphism*> ptrs;
    for (const auto& m : legs) ptrs.push_back(&m);
    action->maps.push_back(glue(*w.wedge, w.set, ptrs));
  }
  w.action = std::move(action);
  if (auto why = w_invariant_failure(w); !why.empty()) throw SimplicialError("build_w: " + why);
  return w;
}

std::string w_invariant_failure(const WedgeW& w) {
  if (auto why = action_failure(*w.action); !why.empty()) return why;
  const int lead = w.lead_vertex();
  if (w.bound >= 1) {
    for (int x : w.set->nondegenerate(1)) {
      if (w.set->face(1, x, 0) == lead || w.set->face(1, x, 1) == lead) return "the lead vertex is not isolated";
    }
  }
  std::vector<Support> supports{w.proper_support()};
  for (Subset l = 0; l < w.ground; ++l) supports.push_back(w.support(l));
  for (Subset k = 0; k <= w.ground; ++k) {
    for (std::size_t s = 0; s < supports.size(); ++s) {
      if (!preserves(w.action->of(k), supports[s])) return "a marked subset is not invariant";
    }
  }
  return {};
}

WedgeContext::WedgeContext(int i, int e)
    : w_(build_w(full_set(i), e)), cones_(full_set(e), e) {
  if (e < 1) throw std::invalid_argument("WedgeContext: E must be nonempty");
  cone_w_ = std::make_shared<ReducedCone>(make_reduced_cone(w_.set));
  cone_action_ = std::make_shared<const MonoidAction>(cone_action(*w_.action, *cone_w_));
}

const Support& WedgeContext::cone_support(Subset l) const {
  auto it = cone_support_.find(l);
  if (it != cone_support_.end()) return it->second;
  const Support base = w_.support(l);
  const ReducedCone& c = *cone_w_;
  Support out = mask_of(*c.set, 0);
  for (int n = 0; n <= c.set->bound(); ++n) {
    for (int x = 0; x < c.set->count(n); ++x) {
      const int whole = c.quotient.from_quotient[n][x];
      if (whole < 0) {
        out[n][x] = 1;
        continue;
      }
      const auto [k, y] = c.cone.coord(n, whole);
      out[n][x] = k == 0 || base[k - 1][y];
    }
  }
  return cone_support_.emplace(l, std::move(out)).first->second;
}

const Morphism& WedgeContext::contraction(Subset l, int i) const {
  const auto key = std::make_pair(l, i);
  auto it = contraction_.find(key);
  if (it != contraction_.end()) return it->second;
  if (!is_subset(l, ground()) || l == ground() || (l >> i & 1u) || i < 0 || i >= popcount(ground())) {
    throw std::invalid_argument("contraction: need L ⊊ I and i ∈ I∖L");
  }
  const ReducedCone& cw = *cone_w_;
  Morphism sigma{cw.set, w_.set, {}};
  sigma.map.resize(cw.set->bound() + 1);
  for (int n = 0; n <= cw.set->bound(); ++n) sigma.map[n].assign(cw.set->count(n), -1);
  for (Subset j : subsets_of(l)) {
    const CanonicalContraction c = make_canonical_contraction(elements(ground() & ~j), i, bound());
    if (!same_tables(*c.suspension.set, *w_.components[j].set)) {
      throw SimplicialError("contraction: component tables differ from the contraction's suspension");
    }
    Morphism in = w_.wedge->insertion_morphism(static_cast<int>(j));
    in.source = c.suspension.set;
    const Morphism cone_in = reduced_cone_map(c.reduced, cw, in);
    for (int n = 0; n <= c.reduced.set->bound(); ++n) {
      for (int x = 0; x < c.reduced.set->count(n); ++x) {
        const int at = cone_in.map[n][x];
        const int value = in.map[n][c.sigma.map[n][x]];
        int& slot = sigma.map[n][at];
        if (slot >= 0 && slot != value) throw SimplicialError("contraction: components disagree on the cone");
        slot = value;
      }
    }
  }
  return contraction_.emplace(key, std::move(sigma)).first->second;
}

const ReducedCone& WedgeContext::plus_cone(Subset f) const {
  auto& slot = plus_cone_[f];
  if (!slot) slot = std::make_unique<ReducedCone>(make_reduced_cone(cones_.plus(f)));
  return *slot;
}

const Morphism& WedgeContext::plus_cone_iso(Subset f) const {
  auto it = plus_iso_.find(f);
  if (it != plus_iso_.end()) return it->second;
  const FaceCone& t = cones_.face(f);
  const ReducedCone& c = plus_cone(f);
  std::vector<int> vmap(t.set->count(0));
  vmap[Cone::apex()] = 0;
  for (int v = 1; v < t.set->count(0); ++v) vmap[v] = c.index(0, 1, t.cone.coord(0, v).second + 1);
  return plus_iso_.emplace(f, from_vertex_map(t.set, c.set, vmap)).first->second;
}

Morphism WedgeContext::xi(Subset j, Subset f) const {
  const SetPtr& source = cones_.plus(f);
  const int top = w_.top_vertex(j);
  Morphism m{source, w_.set, {}};
  m.map.resize(source->bound() + 1);
  for (int n = 0; n <= source->bound(); ++n) {
    m.map[n].resize(source->count(n));
    for (int x = 0; x < source->count(n); ++x) {
      m.map[n][x] = x == source->basepoint_simplex(n) ? w_.set->basepoint_simplex(n) : w_.set->degenerate_vertex(n, top);
    }
  }
  return m;
}

Morphism WedgeContext::filling(const Morphism& v, const ReducedCone& cone, Subset l, int i) const {
  const Morphism coned = reduced_cone_map(cone, *cone_w_, v);
  if (!lands_in(coned, cone_support(l))) throw std::invalid_argument("filling: v does not land in W^L");
  return compose(contraction(l, i), coned);
}

Ensemble WedgeContext::fill(const Ensemble& e, Subset f, Subset l, int i) const {
  const SetPtr& source = cones_.plus(f);
  const ReducedCone& cone = plus_cone(f);
  const Morphism& iso = plus_cone_iso(f);
  return map_ensemble(e, [&](const Key& key) {
    return morphism_key(compose(filling(morphism_from_key(source, w_.set, key), cone, l, i), iso));
  });
}

Witness WedgeContext::fill_witness(const Witness& w, Subset f, Subset l, int i) const {
  if (w.blocks.empty()) return Witness{cones_.face(f).set, w_.action, w.level, {}};
  const Witness coned = cone_witness(w, plus_cone(f), *cone_w_, cone_action_);
  const Witness mapped = map_witness(coned, contraction(l, i), w_.action, &cone_support(l));
  return restrict_witness(mapped, plus_cone_iso(f));
}

Ensemble WedgeContext::restrict_to_layout(const Ensemble& q, Subset f, const Layout& b) const {
  const Layout top = top_layout(f);
  if (b == top) return q;
  return precompose(q, w_.set, cones_.inclusion(b, top));
}

Ensemble WedgeContext::restrict_to_plus(const Ensemble& q, Subset f) const {
  return precompose(q, w_.set, cones_.plus_inclusion(f));
}

Ensemble WedgeContext::combine(const Layout& b, const std::vector<const Ensemble*>& parts) const {
  std::vector<Ensemble> values;
  for (const Ensemble* p : parts) values.push_back(*p);
  return precompose(wedge_product(cones_.split(b), w_.set, values), w_.set, cones_.to_split(b));
}

Witness WedgeContext::combine_witness(const Layout& b, const std::vector<const Witness*>& parts) const {
  Witness out = restrict_witness(wedge_witness(parts, cones_.split(b)), cones_.to_split(b));
  out.action = w_.action;
  return out;
}

std::string WedgeContext::lands_failure(const Ensemble& q, Subset f, const Support& support) const {
  const SetPtr& source = cones_.face(f).set;
  for (const auto& [key, c] : q.terms()) {
    Morphism m;
    try {
      m = morphism_from_key(source, w_.set, key);
    } catch (const std::exception& e) {
      return std::string("undecodable term: ") + e.what();
    }
    if (auto why = check_morphism(m); !why.empty()) return "term is not a based morphism: " + why;
    if (!lands_in(m, support)) return "term leaves the allowed subset of W";
  }
  return {};
}

std::string WedgeContext::fissility_failure(const Ensemble& q, Subset f) const {
  const LayoutLattice lattice(f);
  std::map<Subset, Ensemble> faces;
  for (const auto& b : lattice.layouts()) {
    std::vector<const Ensemble*> parts;
    for (Subset g : b.blocks) {
      auto it = faces.find(g);
      if (it == faces.end()) it = faces.emplace(g, restrict_to_layout(q, f, top_layout(g))).first;
      parts.push_back(&it->second);
    }
    if (restrict_to_layout(q, f, b) != combine(b, parts)) return "not fissile at layout " + layout_to_string(b);
  }
  return {};
}

const ConstructedP& PTable::at(Subset face, Subset j) const {
  for (const auto& entry : entries) {
    if (entry.face == face && entry.j == j) return entry;
  }
  throw std::out_of_range("PTable: pair not constructed yet");
}

void check_construction_guard(int i, int e) {
  if (i < 1 || e < 1) throw std::invalid_argument("construction needs |I| ≥ 1 and |E| ≥ 1");
  const long max_i = env_guard("FISSILE_MAX_CONSTRUCT_I", 2);
  const long max_e = env_guard("FISSILE_MAX_CONSTRUCT_E", 2);
  if ((i <= max_i && e <= max_e) || (i <= 3 && e == 1)) return;
  throw GuardExceeded("construction with |I| = " + std::to_string(i) + ", |E| = " + std::to_string(e) +
                      " exceeds the guard (FISSILE_MAX_CONSTRUCT_I = " + std::to_string(max_i) +
                      ", FISSILE_MAX_CONSTRUCT_E = " + std::to_string(max_e) + ")");
}

namespace {

std::string pair_name(Subset f, Subset j) { return "(F=" + subset_to_string(f) + ", J=" + subset_to_string(j) + ")"; }

std::vector<std::pair<Subset, Subset>> construction_order(Subset faces, Subset ground) {
  std::vector<std::pair<Subset, Subset>> out;
  for (Subset f : subsets_of(faces)) {
    if (f == 0) continue;
    for (Subset j : subsets_of(ground)) {
      if (j != ground) out.emplace_back(f, j);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    const auto ka = std::make_tuple(popcount(a.first), popcount(a.second), a.first, a.second);
    const auto kb = std::make_tuple(popcount(b.first), popcount(b.second), b.first, b.second);
    return ka < kb;
  });
  return out;
}

}  // namespace

PTable construct_p(const WedgeContext& ctx) {
  const int i_size = popcount(ctx.ground());
  const int e_size = popcount(ctx.faces());
  check_construction_guard(i_size, e_size);
  PTable table{i_size, e_size, {}};
  const auto& action = ctx.w().action;
  const SetPtr& wset = ctx.w().set;
  const LayoutCones& cones = ctx.cones();

  for (const auto& [f, j] : construction_order(ctx.faces(), ctx.ground())) {
    const std::string where = pair_name(f, j);
    const auto fail = [&](const std::string& what) { return ConstructionError(what + " fails at " + where); };
    const LayoutLattice lattice(f);
    const FinitePoset poset = layout_poset(lattice);
    const Layout top = top_layout(f);
    const SetPtr& t_f = cones.face(f).set;

    std::vector<int> proper;
    std::vector<WitnessedEnsemble> family;
    for (int idx = 0; idx < lattice.size(); ++idx) {
      if (idx == lattice.top()) continue;
      const Layout& b = lattice.at(idx);
      WitnessedEnsemble u_b;
      for (Subset k : subsets_of(j)) {
        std::vector<const Ensemble*> parts;
        for (Subset g : b.blocks) parts.push_back(&table.at(g, k).p);
        u_b.value += Integer(sign(popcount(j) - popcount(k))) * ctx.combine(b, parts);
      }
      if (j != 0) {
        for (const auto& l : covers(static_cast<int>(b.blocks.size()), j)) {
          std::vector<const Witness*> parts;
          for (std::size_t g = 0; g < b.blocks.size(); ++g) parts.push_back(&table.at(b.blocks[g], l[g]).d);
          u_b.witness += ctx.combine_witness(b, parts);
        }
        if (evaluate(u_b.witness) != u_b.value) throw fail("cover expansion of u_B at " + layout_to_string(b));
      }
      proper.push_back(idx);
      family.push_back(std::move(u_b));
    }

    const auto restrict = [&](int from, int to, const WitnessedEnsemble& v) {
      const Morphism& k = cones.inclusion(lattice.at(to), lattice.at(from));
      return WitnessedEnsemble{precompose(v.value, wset, k), restrict_witness(v.witness, k)};
    };
    const auto extend = [&](int p, int q, const WitnessedEnsemble& v) {
      const Morphism& k = cones.retraction(lattice.at(p), lattice.at(q));
      return WitnessedEnsemble{precompose(v.value, wset, k), restrict_witness(v.witness, k)};
    };
    WitnessedEnsemble u;
    try {
      u = lift_limit(poset, proper, family, restrict, extend);
    } catch (const PosetError& e) {
      throw fail(std::string("limit lifting (") + e.what() + ")");
    }
    for (std::size_t a = 0; a < proper.size(); ++a) {
      if (ctx.restrict_to_layout(u.value, f, lattice.at(proper[a])) != family[a].value) throw fail("lift restriction");
    }

    Ensemble q;
    for (Subset k : subsets_of(j)) {
      if (k != j) q += Integer(sign(popcount(j) - 1 - popcount(k))) * table.at(f, k).p;
    }
    const Ensemble r = q + u.value;
    const Morphism xi = ctx.xi(j, f);
    const Ensemble delta = Ensemble::singleton(morphism_key(xi)) - ctx.restrict_to_plus(r, f);
    const int i = lowest_element(ctx.ground() & ~j);
    const Ensemble p = r + ctx.fill(delta, f, j, i);

    Witness d;
    if (j == 0) {
      d = trivial_witness(p, t_f, action);
    } else {
      Witness delta_w = single_term_witness(omega(j), xi, popcount(j), action);
      delta_w -= restrict_witness(u.witness, cones.plus_inclusion(f));
      if (evaluate(delta_w) != delta) throw fail("boundary difference expansion");
      d = u.witness;
      d += ctx.fill_witness(delta_w, f, j, i);
    }
    d.source = t_f;
    d.action = action;

    const Support support = ctx.w().support(j);
    if (auto why = ctx.lands_failure(p, f, support); !why.empty()) throw fail("support (" + why + ")");
    if (auto why = witness_failure(p - q, d, popcount(j), &support); !why.empty()) throw fail("alternating filtration: " + why);
    for (const auto& b : lattice.layouts()) {
      if (b == top) continue;
      std::vector<const Ensemble*> parts;
      for (Subset g : b.blocks) parts.push_back(&table.at(g, j).p);
      if (ctx.restrict_to_layout(p, f, b) != ctx.combine(b, parts)) throw fail("layout factorization at " + layout_to_string(b));
    }
    if (ctx.restrict_to_plus(p, f) != Ensemble::singleton(morphism_key(xi))) throw fail("boundary value");
    table.entries.push_back({f, j, p, std::move(d)});
  }
  return table;
}

namespace {

Ensemble alternating_p(const PTable& table, Subset f, Subset j, bool proper_only, int top_size) {
  Ensemble out;
  for (Subset k : subsets_of(j)) {
    if (proper_only && k == j) continue;
    out += Integer(sign(top_size - popcount(k))) * table.at(f, k).p;
  }
  return out;
}

// ⊓∨_F q|_{T_F} − q|_{T_A}.
Ensemble almost_fissility_difference(const WedgeContext& ctx, const Ensemble& q, const Layout& a) {
  const Subset e = ctx.faces();
  std::vector<Ensemble> faces;
  for (Subset f : a.blocks) faces.push_back(ctx.restrict_to_layout(q, e, top_layout(f)));
  std::vector<const Ensemble*> parts;
  for (const auto& x : faces) parts.push_back(&x);
  return ctx.combine(a, parts) - ctx.restrict_to_layout(q, e, a);
}

}  // namespace

ConstructedQ construct_q(const WedgeContext& ctx, const PTable& table) {
  const Subset ground = ctx.ground();
  const Subset e = ctx.faces();
  const int level = popcount(ground);
  ConstructedQ out;
  out.q = alternating_p(table, e, ground, true, level - 1);
  const Support proper = ctx.w().proper_support();

  const LayoutLattice lattice(e);
  for (const auto& a : lattice.layouts()) {
    const Ensemble diff = almost_fissility_difference(ctx, out.q, a);
    std::vector<Witness> restricted;
    Witness w{ctx.cones().layout(a).set, ctx.w().action, kAnyLevel, {}};
    for (const auto& k : proper_covers(static_cast<int>(a.blocks.size()), ground)) {
      std::vector<Witness> parts;
      for (std::size_t x = 0; x < a.blocks.size(); ++x) {
        const Subset f = a.blocks[x];
        parts.push_back(restrict_witness(table.at(e, k[x]).d, ctx.cones().inclusion(top_layout(f), top_layout(e))));
      }
      std::vector<const Witness*> ptrs;
      for (const auto& p : parts) ptrs.push_back(&p);
      w += ctx.combine_witness(a, ptrs);
    }
    w.source = ctx.cones().layout(a).set;
    w.action = ctx.w().action;
    if (auto why = witness_failure(diff, w, level, &proper); !why.empty()) {
      throw ConstructionError("almost fissility at " + layout_to_string(a) + ": " + why);
    }
    out.almost_fissility.emplace_back(a, std::move(w));
  }

  const Morphism xi = ctx.xi(ground, e);
  const Ensemble boundary = Ensemble::singleton(morphism_key(xi)) - ctx.restrict_to_plus(out.q, e);
  out.boundary = single_term_witness(omega(ground), xi, level, ctx.w().action);
  if (auto why = witness_failure(boundary, out.boundary, level); !why.empty()) {
    throw ConstructionError("boundary condition: " + why);
  }
  return out;
}

namespace {

std::string p_file_name(Subset f, Subset j) { return "p_F" + std::to_string(f) + "_J" + std::to_string(j) + ".json"; }

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump() << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return nlohmann::json::parse(in);
}

}  // namespace

std::vector<std::string> write_artifacts(const std::filesystem::path& dir, const WedgeContext& ctx,
                                         const PTable& table, const ConstructedQ* q) {
  std::filesystem::create_directories(dir);
  SpaceTable spaces;
  std::vector<std::string> written;
  nlohmann::json manifest;
  manifest["format"] = "fissile-construction-1";
  manifest["i"] = table.i;
  manifest["e"] = table.e;
  manifest["bound"] = ctx.bound();
  manifest["entries"] = nlohmann::json::array();
  for (const auto& entry : table.entries) {
    const std::string name = p_file_name(entry.face, entry.j);
    nlohmann::json j;
    j["face"] = subset_to_json(entry.face);
    j["j"] = subset_to_json(entry.j);
    j["support"] = subset_to_json(entry.j);
    j["level"] = popcount(entry.j);
    j["p"] = to_json(entry.p);
    j["witness"] = witness_to_json(entry.d, spaces);
    write_json(dir / name, j);
    written.push_back((dir / name).string());
    manifest["entries"].push_back({{"face", subset_to_json(entry.face)}, {"j", subset_to_json(entry.j)}, {"file", name}});
  }
  if (q) {
    nlohmann::json j;
    j["q"] = to_json(q->q);
    j["level"] = table.i;
    j["almost_fissility"] = nlohmann::json::array();
    for (const auto& [a, w] : q->almost_fissility) {
      j["almost_fissility"].push_back({{"layout", layout_to_json(a)}, {"witness", witness_to_json(w, spaces)}});
    }
    j["boundary"] = witness_to_json(q->boundary, spaces);
    write_json(dir / "q.json", j);
    written.push_back((dir / "q.json").string());
    manifest["q"] = "q.json";
  } else {
    manifest["q"] = nullptr;
  }
  manifest["spaces"] = "spaces.json";
  write_json(dir / "spaces.json", spaces.to_json());
  written.push_back((dir / "spaces.json").string());
  write_json(dir / "manifest.json", manifest);
  written.push_back((dir / "manifest.json").string());
  return written;
}

std::vector<CheckItem> check_artifacts(const std::filesystem::path& dir) {
  std::vector<CheckItem> items;
  const auto record = [&](std::string condition, const std::function<std::string()>& check) {
    CheckItem item{std::move(condition), false, {}};
    try {
      item.detail = check();
      item.pass = item.detail.empty();
    } catch (const std::exception& e) {
      item.detail = std::string("exception: ") + e.what();
    }
    items.push_back(std::move(item));
  };

  nlohmann::json manifest;
  std::unique_ptr<WedgeContext> ctx;
  std::vector<SetPtr> spaces;
  record("artifacts load", [&]() -> std::string {
    manifest = read_json(dir / "manifest.json");
    if (manifest.at("format") != "fissile-construction-1") return "unknown artifact format";
    ctx = std::make_unique<WedgeContext>(manifest.at("i").get<int>(), manifest.at("e").get<int>());
    if (manifest.at("bound").get<int>() != ctx->bound()) return "dimension bound differs from |E|";
    spaces = SpaceTable::from_json(read_json(dir / manifest.at("spaces").get<std::string>()));
    return {};
  });
  if (!ctx) return items;

  const Subset ground = ctx->ground();
  const Subset e = ctx->faces();
  PTable table{manifest.at("i").get<int>(), manifest.at("e").get<int>(), {}};
  record("every pair (F, J) present once", [&]() -> std::string {
    std::vector<std::pair<Subset, Subset>> seen;
    for (const auto& entry : manifest.at("entries")) {
      const nlohmann::json j = read_json(dir / entry.at("file").get<std::string>());
      ConstructedP p;
      p.face = subset_from_json(j.at("face"));
      p.j = subset_from_json(j.at("j"));
      if (p.face == 0 || !is_subset(p.face, e) || !is_subset(p.j, ground) || p.j == ground) return "pair out of range";
      if (subset_from_json(j.at("support")) != p.j || j.at("level").get<int>() != popcount(p.j)) {
        return "declared support or level differs from J";
      }
      p.p = ensemble_from_json(j.at("p"));
      p.d = witness_from_json(j.at("witness"), ctx->cones().face(p.face).set, ctx->w().action, spaces);
      seen.emplace_back(p.face, p.j);
      table.entries.push_back(std::move(p));
    }
    auto expected = construction_order(e, ground);
    std::sort(expected.begin(), expected.end());
    std::sort(seen.begin(), seen.end());
    return seen == expected ? std::string{} : std::string("pairs differ from P_×(E) × P^×(I)");
  });
  if (!items.back().pass) return items;

  for (const auto& entry : table.entries) {
    const Subset f = entry.face;
    const Subset j = entry.j;
    const std::string at = " " + pair_name(f, j);
    const Support support = ctx->w().support(j);
    record("support" + at, [&] { return ctx->lands_failure(entry.p, f, support); });
    record("layout factorization" + at, [&]() -> std::string {
      const LayoutLattice lattice(f);
      for (const auto& b : lattice.layouts()) {
        std::vector<const Ensemble*> parts;
        for (Subset g : b.blocks) parts.push_back(&table.at(g, j).p);
        if (ctx->restrict_to_layout(entry.p, f, b) != ctx->combine(b, parts)) return "fails at " + layout_to_string(b);
      }
      return {};
    });
    record("boundary value" + at, [&]() -> std::string {
      return ctx->restrict_to_plus(entry.p, f) == Ensemble::singleton(morphism_key(ctx->xi(j, f)))
                 ? std::string{}
                 : std::string("restriction to the boundary differs from ξ");
    });
    record("alternating filtration" + at, [&] {
      return witness_failure(alternating_p(table, f, j, false, popcount(j)), entry.d, popcount(j), &support);
    });
    if (f == e) record("fissile" + at, [&] { return ctx->fissility_failure(entry.p, f); });
  }

  if (manifest.at("q").is_null()) return items;
  nlohmann::json qj;
  Ensemble q;
  record("q is the alternating sum of the p_J", [&]() -> std::string {
    qj = read_json(dir / manifest.at("q").get<std::string>());
    q = alternating_p(table, e, ground, true, popcount(ground) - 1);
    return ensemble_from_json(qj.at("q")) == q ? std::string{} : std::string("stored q differs");
  });
  if (!items.back().pass) return items;
  const int level = popcount(ground);
  const Support proper = ctx->w().proper_support();
  record("almost fissility covers every layout", [&]() -> std::string {
    std::vector<Key> stored, expected;
    for (const auto& x : qj.at("almost_fissility")) stored.push_back(layout_key(layout_from_json(x.at("layout"))));
    const LayoutLattice lattice(e);
    for (const auto& a : lattice.layouts()) expected.push_back(layout_key(a));
    return stored == expected ? std::string{} : std::string("layout list differs from A(E)");
  });
  for (const auto& x : qj.at("almost_fissility")) {
    const Layout a = layout_from_json(x.at("layout"));
    record("almost fissility at " + layout_to_string(a), [&] {
      const Witness w = witness_from_json(x.at("witness"), ctx->cones().layout(a).set, ctx->w().action, spaces);
      return witness_failure(almost_fissility_difference(*ctx, q, a), w, level, &proper);
    });
  }
  record("boundary condition", [&] {
    const Witness w = witness_from_json(qj.at("boundary"), ctx->cones().plus(e), ctx->w().action, spaces);
    const Ensemble value =
        Ensemble::singleton(morphism_key(ctx->xi(ground, e))) - ctx->restrict_to_plus(q, e);
    return witness_failure(value, w, level);
  });
  return items;
}

}  // namespace fissile
