#include "fissile/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>

#include "fissile/brunnian.hpp"
#include "fissile/chained_monoid.hpp"
#include "fissile/fissilizer.hpp"
#include "fissile/identities.hpp"
#include "fissile/layout_cones.hpp"
#include "fissile/posets.hpp"
#include "fissile/simplicial/complexes.hpp"
#include "fissile/simplicial/constructions.hpp"
#include "fissile/simplicial/contraction.hpp"
#include "fissile/simplicial/enumerate.hpp"
#include "fissile/wedge_w.hpp"

namespace fissile {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::skipped_guard:
      return "skipped-guard";
  }
  return "fail";
}

nlohmann::json report_to_json(const CaseReport& r) {
  nlohmann::json j;
  j["suite"] = r.suite;
  j["params"] = r.params;
  j["verdict"] = verdict_name(r.verdict);
  j["timing"] = {{"seconds", r.seconds}};
  j["artifacts"] = r.artifacts;
  j["checks"] = r.checks;
  j["detail"] = r.detail;
  if (!r.result.is_null()) j["result"] = r.result;
  return j;
}

namespace {

struct Checks {
  long count = 0;
  std::string failure;

  bool require(bool ok, const std::string& what) {
    ++count;
    if (!ok && failure.empty()) failure = what;
    return ok;
  }
  bool none(const std::string& why, const std::string& what) { return require(why.empty(), what + ": " + why); }
};

CaseReport run_case(const std::string& suite, nlohmann::json params, const std::function<void(Checks&, CaseReport&)>& body) {
  CaseReport r;
  r.suite = suite;
  r.params = std::move(params);
  Checks checks;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(checks, r);
    r.verdict = checks.failure.empty() ? Verdict::pass : Verdict::fail;
    r.detail = checks.failure;
  } catch (const GuardExceeded& e) {
    r.verdict = Verdict::skipped_guard;
    r.detail = e.what();
  } catch (const std::exception& e) {
    r.verdict = Verdict::fail;
    r.detail = std::string("exception: ") + e.what();
  }
  r.checks = checks.count;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<int> range_of(int n) {
  std::vector<int> out(n);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

// ---------------------------------------------------------------- identities

std::vector<CaseReport> identities_suite(const SuiteBounds& b) {
  std::vector<CaseReport> out;
  for (int a = 0; a <= b.max_a; ++a) {
    for (int i = 0; i <= b.max_i; ++i) {
      out.push_back(run_case("identities", {{"a", a}, {"i", i}}, [&](Checks& c, CaseReport&) {
        const Subset ground = full_set(i);
        c.require(verify_cover_identity(a, ground), "cover identity");
        c.require(verify_proper_cover_identity(a, ground), "proper cover identity");
        c.require(verify_total_term_sum(a, ground), "total term sum");
        c.require(verify_proper_term_sum(a, ground), "proper term sum");
        c.require(verify_cover_difference(a, ground), "cover difference");
      }));
    }
  }
  return out;
}

// ---------------------------------------------------------- layout presheaves

struct PresheafCase {
  std::string name;
  std::unique_ptr<LayoutPresheaf> m;
  std::unique_ptr<Fissilizer> phi;
};

// Vertex and face labellings for every |E|; the simplicial model up to
// |E| = 2, beyond which sampling Z^{T_F} is out of reach.
std::vector<PresheafCase> presheaves(int e) {
  std::vector<PresheafCase> out;
  const Subset ground = full_set(e);
  const auto add = [&](std::string name, std::unique_ptr<LayoutPresheaf> m) {
    auto phi = std::make_unique<Fissilizer>(*m);
    out.push_back({std::move(name), std::move(m), std::move(phi)});
  };
  add("vertex-labels", std::make_unique<LabellingPresheaf>(ground, 2, false));
  add("face-labels", std::make_unique<LabellingPresheaf>(ground, 2, true));
  if (e <= 2) add("simplicial-model", std::make_unique<SimplicialModelPresheaf>(ground, make_suspension(point_set(e)).set));
  return out;
}

Key sample_tuple(const LayoutPresheaf& m, const Layout& a, std::mt19937_64& rng) {
  std::vector<Key> parts;
  for (Subset f : a.blocks) parts.push_back(m.sample(f, rng));
  return encode_tuple(parts);
}

Ensemble random_section(const LayoutPresheaf& m, const Layout& a, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> terms(0, 3);
  Ensemble s;
  const int t = terms(rng);
  for (int i = 0; i < t; ++i) s.add(sample_tuple(m, a, rng), coeff(rng));
  return s;
}

Ensemble random_q(const LayoutPresheaf& m, Subset f, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> terms(1, 4);
  Ensemble q;
  const int t = terms(rng);
  for (int i = 0; i < t; ++i) q.add(m.sample(f, rng), coeff(rng));
  return q;
}

template <class Body>
std::vector<CaseReport> per_presheaf(const std::string& suite, int max_e, std::uint64_t seed, Body&& body) {
  std::vector<CaseReport> out;
  for (int e = 1; e <= max_e; ++e) {
    std::vector<PresheafCase> cases;
    try {
      cases = presheaves(e);
    } catch (const GuardExceeded& ex) {
      CaseReport r;
      r.suite = suite;
      r.params = {{"e", e}};
      r.verdict = Verdict::skipped_guard;
      r.detail = ex.what();
      out.push_back(std::move(r));
      continue;
    }
    for (const auto& pc : cases) {
      out.push_back(run_case(suite, {{"e", e}, {"presheaf", pc.name}}, [&](Checks& c, CaseReport&) {
        std::mt19937_64 rng(seed * 1000003 + static_cast<std::uint64_t>(e));
        body(c, *pc.phi, rng);
      }));
    }
  }
  return out;
}

std::vector<CaseReport> nabla_suite(const SuiteBounds& b) {
  return per_presheaf("nabla", b.max_e, b.seed, [](Checks& c, const Fissilizer& phi, std::mt19937_64& rng) {
    const auto& m = phi.presheaf();
    const auto& lattice = phi.lattice();
    const auto all = range_of(lattice.size());
    const auto restrict = [&](int p, int q, const Ensemble& s) { return phi.restrict_index(p, q, s); };
    const auto extend = [&](int p, int q, const Ensemble& s) { return phi.extend_index(p, q, s); };
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Ensemble> family;
      for (int a : all) family.push_back(random_section(m, lattice.at(a), rng));
      const std::string at = " (trial " + std::to_string(trial) + ")";
      c.require(nabla(phi.poset(), all, nabla_inverse(phi.poset(), all, family, restrict), restrict) == family,
                "nabla after its inverse" + at);
      c.require(nabla_inverse(phi.poset(), all, nabla(phi.poset(), all, family, restrict), restrict) == family,
                "inverse after nabla" + at);
      c.none(extender_diagram_failure(phi.poset(), family, restrict, extend), "extender diagram" + at);
    }
    // Extender axioms, one random section per pair.
    const int top = lattice.top();
    for (int p = 0; p < lattice.size(); ++p) {
      for (int q = 0; q < lattice.size(); ++q) {
        const Ensemble s = random_section(m, lattice.at(q), rng);
        const std::string at = layout_to_string(lattice.at(p)) + " over " + layout_to_string(lattice.at(q));
        if (lattice.geq(p, q)) c.require(restrict(p, q, extend(p, q, s)) == s, "extender is a section at " + at);
        const int meet = lattice.meet(p, q);
        c.require(restrict(top, p, extend(top, q, s)) == extend(p, meet, restrict(q, meet, s)),
                  "extender meets restriction at " + at);
      }
    }
  });
}

std::vector<CaseReport> lift_suite(const SuiteBounds& b) {
  return per_presheaf("lift", b.max_e, b.seed + 1, [](Checks& c, const Fissilizer& phi, std::mt19937_64& rng) {
    const auto& m = phi.presheaf();
    const auto& lattice = phi.lattice();
    const int top = lattice.top();
    std::vector<int> proper;
    for (int a = 0; a < lattice.size(); ++a) {
      if (a != top) proper.push_back(a);
    }
    const auto restrict = [&](int p, int q, const Ensemble& s) { return phi.restrict_index(p, q, s); };
    const auto extend = [&](int p, int q, const Ensemble& s) { return phi.extend_index(p, q, s); };
    for (int trial = 0; trial < 100; ++trial) {
      const Ensemble global = random_section(m, lattice.at(top), rng);
      std::vector<Ensemble> family;
      for (int a : proper) family.push_back(restrict(top, a, global));
      const Ensemble u = lift_limit(phi.poset(), proper, family, restrict, extend);
      for (std::size_t i = 0; i < proper.size(); ++i) {
        c.require(restrict(top, proper[i], u) == family[i],
                  "lift restricts back at " + layout_to_string(lattice.at(proper[i])) + " (trial " +
                      std::to_string(trial) + ")");
      }
      // The empty layout lies below everything, so disturbing it breaks
      // compatibility whenever P^× has another element.
      if (proper.size() > 1) {
        const int empty = lattice.index_of(make_layout({}));
        auto broken = family;
        const auto pos = static_cast<std::size_t>(std::find(proper.begin(), proper.end(), empty) - proper.begin());
        broken[pos].add(encode_tuple(std::vector<Key>{}), 1);
        bool refused = false;
        try {
          lift_limit(phi.poset(), proper, broken, restrict, extend);
        } catch (const PosetError&) {
          refused = true;
        }
        c.require(refused, "incompatible family refused");
      }
    }
  });
}

// ----------------------------------------------------------------- fissilizer

std::vector<CaseReport> fissilizer_suite(const SuiteBounds& b) {
  auto out = per_presheaf("fissilizer", b.max_e, b.seed + 2, [](Checks& c, const Fissilizer& phi, std::mt19937_64& rng) {
    const auto& m = phi.presheaf();
    const Subset e = phi.ground();
    for (int trial = 0; trial < 200; ++trial) {
      const Ensemble q = random_q(m, e, rng);
      const Ensemble r = phi.fissilize(q);
      const std::string at = " (trial " + std::to_string(trial) + ")";
      c.none(phi.fissility_failure(r), "result is fissile" + at);
      c.require(augmentation(r) == 1, "augmentation is one" + at);
      c.require(phi.fissilize(r) == r, "fissile input is fixed" + at);
      if (phi.is_fissile(q)) c.require(phi.fissilize(q) == q, "fissile input is fixed" + at);
      if (trial >= 10) continue;
      // Restrictions of Φ_E(Q) are products of the face fissilizers.
      for (const auto& a : phi.lattice().layouts()) {
        std::vector<Ensemble> factors;
        for (Subset f : a.blocks) factors.push_back(Fissilizer(m, f).fissilize(restrict_face_ensemble(m, e, f, q)));
        c.require(phi.restrict_to_layout(r, a) == tuple_product(factors),
                  "restriction to " + layout_to_string(a) + " factors" + at);
      }
    }
  });
  for (int e = 1; e <= std::min(2, b.max_e); ++e) {
    for (bool faces : {false, true}) {
      const std::string name = faces ? "face-labels" : "vertex-labels";
      out.push_back(run_case("fissilizer", {{"e", e}, {"presheaf", name}, {"check", "congruence"}}, [&](Checks& c, CaseReport&) {
        const LabellingPresheaf m(full_set(e), 2, faces);
        const Fissilizer phi(m);
        const auto& lattice = phi.lattice();
        std::mt19937_64 rng(b.seed * 7919 + static_cast<std::uint64_t>(e) * 2 + faces);
        std::uniform_int_distribution<int> pick(0, lattice.size() - 1);
        for (int trial = 0; trial < 50; ++trial) {
          const Ensemble q = random_q(m, full_set(e), rng);
          std::vector<std::vector<Ensemble>> seeds(lattice.size());
          for (int a = 0; a < lattice.size(); ++a) {
            seeds[a].push_back(phi.q_square(q, lattice.at(a)) - phi.restrict_to_layout(q, lattice.at(a)));
          }
          // One extra random generator keeps N from being the minimal family.
          const int extra = pick(rng);
          seeds[extra].push_back(random_section(m, lattice.at(extra), rng));
          const auto n = admissible_closure(phi, seeds);
          const auto report = check_fissilizer_congruence(phi, q, n);
          const std::string at = " (trial " + std::to_string(trial) + ")";
          c.require(report.hypotheses_hold, "hypotheses on the closure" + at + ": " + report.diagnostic);
          c.require(report.conclusion_holds, "congruence" + at + ": " + report.diagnostic);
          c.require(linear_combination(n[lattice.top()], report.certificate.coefficients) ==
                        Fissilizer::wrap(phi.fissilize(q)) - Fissilizer::wrap(q),
                    "certificate reproduces the difference" + at);
        }
      }));
    }
  }
  return out;
}

// ----------------------------------------------------------------- simplicial

// The simplicial identities re-derived from the accessors.
std::string identity_failure(const SimplicialSet& s) {
  const int bound = s.bound();
  for (int n = 2; n <= bound; ++n) {
    for (int x = 0; x < s.count(n); ++x) {
      for (int j = 1; j <= n; ++j) {
        for (int i = 0; i < j; ++i) {
          if (s.face(n - 1, s.face(n, x, j), i) != s.face(n - 1, s.face(n, x, i), j - 1)) return "d_i d_j";
        }
      }
    }
  }
  for (int n = 0; n < bound; ++n) {
    for (int x = 0; x < s.count(n); ++x) {
      for (int j = 0; j <= n; ++j) {
        const int y = s.degeneracy(n, x, j);
        for (int i = 0; i <= n + 1; ++i) {
          int expected;
          if (i == j || i == j + 1) {
            expected = x;
          } else if (i < j) {
            expected = s.degeneracy(n - 1, s.face(n, x, i), j - 1);
          } else {
            expected = s.degeneracy(n - 1, s.face(n, x, i - 1), j);
          }
          if (s.face(n + 1, y, i) != expected) return "d_i s_j";
        }
        for (int i = 0; i <= j && n + 1 < bound; ++i) {
          if (s.degeneracy(n + 1, y, i) != s.degeneracy(n + 1, s.degeneracy(n, x, i), j + 1)) return "s_i s_j";
        }
      }
    }
  }
  return {};
}

bool is_isomorphism(const Morphism& m) {
  if (!check_morphism(m, false).empty()) return false;
  for (int n = 0; n <= m.source->bound(); ++n) {
    if (m.source->count(n) != m.target->count(n)) return false;
    std::set<int> image(m.map[n].begin(), m.map[n].end());
    if (static_cast<int>(image.size()) != m.target->count(n)) return false;
  }
  return true;
}

struct Sample {
  std::string name;
  SetPtr set;
};

std::vector<Sample> samples(const SuiteBounds& b) {
  const int d = b.bound;
  std::vector<Sample> out{
      {"point", point_set(d)},
      {"empty", empty_set(d)},
      {"two points", make_nerve(2, [](int x, int y) { return x == y; }, d).set},
      {"interval", interval_set(d)},
      {"path", barycentric(complex_from_facets({0b011, 0b110}), d).set},
      {"triangle boundary", barycentric(complex_from_facets({0b011, 0b110, 0b101}), d).set},
  };
  for (int e = 1; e <= b.max_e; ++e) out.push_back({"beta simplex " + std::to_string(e), barycentric(simplex_complex(full_set(e)), d).set});
  for (int a = 1; a <= b.max_a; ++a) out.push_back({"thick simplex " + std::to_string(a), make_thick_simplex(range_of(a), d).set});
  return out;
}

std::vector<CaseReport> simplicial_suite(const SuiteBounds& b) {
  std::vector<CaseReport> out;
  const nlohmann::json params{{"bound", b.bound}, {"max_a", b.max_a}, {"max_e", b.max_e}};
  const auto with = [&](const char* check) {
    auto p = params;
    p["check"] = check;
    return p;
  };
  out.push_back(run_case("simplicial", with("identities"), [&](Checks& c, CaseReport&) {
    for (const auto& s : samples(b)) {
      c.none(identity_failure(*s.set), s.name);
      for (int side : {0, 1}) c.none(identity_failure(*make_cone(s.set, side).set), "cone on " + s.name);
      const auto plus = make_plus(s.set);
      c.none(identity_failure(*plus.set), s.name + " plus");
      c.none(identity_failure(*make_reduced_cone(plus.set).set), "reduced cone on " + s.name + " plus");
      c.none(identity_failure(*make_suspension(s.set).set), "suspension of " + s.name);
    }
    for (int a = 1; a <= b.max_a; ++a) {
      const auto k = make_canonical_contraction(range_of(a), 0, b.bound);
      c.none(identity_failure(*k.suspension.set), "suspended thick simplex");
      c.none(identity_failure(*k.reduced.set), "its reduced cone");
      c.none(identity_failure(*k.outer.set), "its double cone");
    }
  }));
  out.push_back(run_case("simplicial", with("cone universal property"), [&](Checks& c, CaseReport&) {
    const auto interval = interval_set(b.bound);
    for (const auto& s : samples(b)) {
      for (int side : {0, 1}) {
        const auto cone = make_cone(s.set, side);
        const auto p = cone.projection(interval);
        const auto inc = cone.inclusion();
        const std::string at = s.name + " side " + std::to_string(side);
        c.none(check_morphism(p, false), "projection of " + at);
        c.none(check_morphism(inc, false), "inclusion of " + at);
        for (int n = 0; n <= b.bound; ++n) {
          // Over δ^s the fibre is exactly U; over δ^{1−s} it is the apex alone.
          const int over_base = interval->degenerate_vertex(n, side == 0 ? 1 : 0);
          const int over_apex = interval->degenerate_vertex(n, side == 0 ? 0 : 1);
          std::set<int> fibre, apex_fibre;
          for (int x = 0; x < cone.set->count(n); ++x) {
            if (p(n, x) == over_base) fibre.insert(x);
            if (p(n, x) == over_apex) apex_fibre.insert(x);
          }
          const std::set<int> image(inc.map[n].begin(), inc.map[n].end());
          c.require(fibre == image && image.size() == inc.map[n].size(), "fibre over the base of " + at);
          c.require(apex_fibre == std::set<int>{Cone::apex()}, "unique apex lift for " + at);
        }
      }
    }
  }));
  out.push_back(run_case("simplicial", with("reduced cone of plus"), [&](Checks& c, CaseReport&) {
    for (const auto& s : samples(b)) {
      const auto plus = make_plus(s.set);
      const auto rc = make_reduced_cone(plus.set);
      const auto cu = make_cone(s.set, 0);
      Morphism m{rc.set, cu.set, {}};
      m.map.resize(b.bound + 1);
      for (int n = 0; n <= b.bound; ++n) {
        for (int z = 0; z < rc.set->count(n); ++z) {
          const int x = rc.quotient.from_quotient[n][z];
          if (x < 0) {
            m.map[n].push_back(Cone::apex());
            continue;
          }
          const auto [k, y] = rc.cone.coord(n, x);
          m.map[n].push_back(k == 0 ? Cone::apex() : cu.index(n, k, plus.from_quotient[k - 1][y]));
        }
      }
      c.require(is_isomorphism(m), "reduced cone of " + s.name + " plus");
    }
    const auto rc = make_reduced_cone(point_set(b.bound));
    for (int n = 0; n <= b.bound; ++n) c.require(rc.set->count(n) == 1, "reduced cone of a point");
  }));
  out.push_back(run_case("simplicial", with("reduced cone preserves wedges"), [&](Checks& c, CaseReport&) {
    const auto all = samples(b);
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i; j < all.size() && j < i + 3; ++j) {
        const std::vector<SetPtr> parts{make_plus(all[i].set).set, make_suspension(all[j].set).set};
        const auto w = make_wedge(parts, b.bound);
        const auto cw = make_reduced_cone(w.set);
        std::vector<ReducedCone> cones;
        std::vector<SetPtr> coned;
        for (const auto& p : parts) {
          cones.push_back(make_reduced_cone(p));
          coned.push_back(cones.back().set);
        }
        const auto wc = make_wedge(coned, b.bound);
        std::vector<Morphism> pieces;
        for (std::size_t k = 0; k < parts.size(); ++k) {
          pieces.push_back(reduced_cone_map(cones[k], cw, w.insertion_morphism(static_cast<int>(k))));
        }
        std::vector<const Morphism*> ptrs;
        for (const auto& p : pieces) ptrs.push_back(&p);
        c.require(is_isomorphism(glue(wc, cw.set, ptrs)), "wedge of " + all[i].name + " and " + all[j].name);
      }
    }
  }));
  out.push_back(run_case("simplicial", with("suspension vertices"), [&](Checks& c, CaseReport&) {
    for (const auto& s : samples(b)) {
      const auto susp = make_suspension(s.set);
      c.require(susp.set->count(0) == 2 && susp.top() != susp.set->basepoint(), "two vertices in suspension of " + s.name);
    }
  }));
  return out;
}

// ---------------------------------------------------------------- retractions

std::vector<AbstractComplex> subcomplexes(Subset e) {
  std::vector<Subset> faces;
  for (Subset f = 1; f <= e; ++f) {
    if (is_subset(f, e)) faces.push_back(f);
  }
  std::set<std::vector<Subset>> seen;
  std::vector<AbstractComplex> out;
  for (std::uint32_t family = 0; family < (1u << faces.size()); ++family) {
    std::vector<Subset> chosen;
    for (std::size_t i = 0; i < faces.size(); ++i) {
      if (family >> i & 1) chosen.push_back(faces[i]);
    }
    AbstractComplex k = complex_from_facets(chosen);
    if (seen.insert(k.simplices).second) out.push_back(std::move(k));
  }
  return out;
}

std::vector<CaseReport> retractions_suite(const SuiteBounds& b) {
  std::vector<CaseReport> out;
  out.push_back(run_case("retractions", {{"check", "contraction square"}, {"max_a", b.max_a}, {"bound", b.bound}},
                         [&](Checks& c, CaseReport&) {
    std::vector<std::vector<int>> alphabets;
    for (Subset a = 1; a <= full_set(b.max_a); ++a) alphabets.push_back(elements(a));
    std::map<std::pair<std::vector<int>, int>, CanonicalContraction> cache;
    const auto contraction = [&](const std::vector<int>& a, int letter) -> const CanonicalContraction& {
      auto it = cache.find({a, letter});
      if (it == cache.end()) it = cache.emplace(std::pair{a, letter}, make_canonical_contraction(a, letter, b.bound)).first;
      return it->second;
    };
    for (const auto& a : alphabets) {
      for (int letter : a) {
        const auto& k = contraction(a, letter);
        const std::string at = "alphabet " + subset_to_string(subset_of(a)) + " letter " + std::to_string(letter + 1);
        c.none(check_morphism(k.sigma), "contraction is based for " + at);
        c.require(same_map(compose(k.sigma, k.reduced.inclusion()), identity_morphism(k.suspension.set)),
                  "contraction is a retraction for " + at);
        const int pos = static_cast<int>(std::find(a.begin(), a.end(), letter) - a.begin());
        const int letter_vertex = k.suspension.quotient.to_quotient[0][k.suspension.cone.index(0, 1, pos)];
        c.require(k.sigma(0, k.reduced.index(0, 0, 0)) == letter_vertex, "apex goes to the letter for " + at);
      }
    }
    for (const auto& big : alphabets) {
      for (const auto& small : alphabets) {
        if (!is_subset(subset_of(small), subset_of(big))) continue;
        for (int letter : small) {
          const auto& cb = contraction(small, letter);
          const auto& ca = contraction(big, letter);
          const auto se = suspension_map(cb.suspension, ca.suspension, thick_map(cb.thick, ca.thick));
          const auto cse = reduced_cone_map(cb.reduced, ca.reduced, se);
          c.require(same_map(compose(ca.sigma, cse), compose(se, cb.sigma)),
                    "square for " + subset_to_string(subset_of(small)) + " in " + subset_to_string(subset_of(big)));
        }
      }
    }
  }));
  for (int e = 1; e <= b.max_e; ++e) {
    out.push_back(run_case("retractions", {{"check", "retraction square"}, {"e", e}, {"bound", b.bound}},
                           [&](Checks& c, CaseReport&) {
      const AbstractComplex k = simplex_complex(full_set(e));
      const auto subs = subcomplexes(full_set(e));
      std::map<std::vector<Subset>, FaceCone> cones;
      const auto cone = [&](const AbstractComplex& x) -> const FaceCone& {
        auto it = cones.find(x.simplices);
        if (it == cones.end()) it = cones.emplace(x.simplices, make_face_cone(x, b.bound)).first;
        return it->second;
      };
      const FaceCone& fk = cone(k);
      for (const auto& l : subs) {
        const FaceCone& fl = cone(l);
        c.require(same_map(compose(canonical_retraction(fk, fl), face_cone_inclusion(fl, fk)), identity_morphism(fl.set)),
                  "retraction restricts to the identity");
        for (const auto& m : subs) {
          const auto lm = intersect(l, m);
          const FaceCone& fm = cone(m);
          const FaceCone& flm = cone(lm);
          const auto left = compose(canonical_retraction(fk, fm), face_cone_inclusion(fl, fk));
          const auto right = compose(face_cone_inclusion(flm, fm), canonical_retraction(fl, flm));
          c.require(same_map(left, right), "square for a pair of subcomplexes");
        }
      }
    }));
    out.push_back(run_case("retractions", {{"check", "layout retraction naturality"}, {"e", e}, {"bound", b.bound}},
                           [&](Checks& c, CaseReport&) {
      const LayoutCones cones(full_set(e), b.bound);
      const LayoutLattice lattice(full_set(e));
      const Layout top = top_layout(full_set(e));
      for (const auto& a : lattice.layouts()) {
        for (const auto& bl : lattice.layouts()) {
          const Layout meet = layout_meet(a, bl);
          const auto left = compose(cones.retraction(top, bl), cones.inclusion(a, top));
          const auto right = compose(cones.inclusion(meet, bl), cones.retraction(a, meet));
          c.require(same_map(left, right), "square at " + layout_to_string(a) + ", " + layout_to_string(bl));
        }
      }
    }));
  }
  return out;
}

// ------------------------------------------------------------------ witnesses

bool ideal_oracle(const Ensemble& pi, Subset ground, int s) {
  for (Subset j : subsets_of(ground)) {
    if (popcount(j) >= s) continue;
    Integer coordinate = 0;
    for (Subset k : subsets_of(ground)) {
      if (is_subset(j, k)) coordinate += pi.coefficient(subset_key(k));
    }
    if (coordinate != 0) return false;
  }
  return true;
}

Ensemble random_ideal_element(std::mt19937_64& rng, Subset ground, int s) {
  const auto gens = ideal_generators(ground, s);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  Ensemble out;
  for (int t = 0; t < 3; ++t) out += Integer(coeff(rng)) * generator_value(gens[pick(rng)]);
  return out;
}

struct PipelineSource {
  SetPtr set;
  std::vector<Morphism> into;
  std::vector<Morphism> maps;  // based maps to W landing in W^L
};

struct PipelineSetup {
  WedgeContext ctx;
  Subset l;
  std::vector<PipelineSource> sources;

  PipelineSetup(int i, Subset l_) : ctx(i, 2), l(l_) {
    const Support support = ctx.w().support(l);
    const auto& cones = ctx.cones();
    const auto add = [&](const SetPtr& s, std::vector<Morphism> into) {
      PipelineSource src{s, std::move(into), {}};
      for (auto& m : enumerate_based_morphisms(s, ctx.w().set)) {
        if (lands_in(m, support)) src.maps.push_back(std::move(m));
      }
      sources.push_back(std::move(src));
    };
    add(cones.plus(0b01), {});
    add(cones.plus(0b11), {cones.plus_face_inclusion(0b01, 0b11), cones.plus_face_inclusion(0b10, 0b11)});
    add(cones.face(0b01).set, {cones.plus_inclusion(0b01)});
  }
};

struct Pipeline {
  Ensemble value;
  Witness witness;
  int level = 0;
};

Pipeline start_pipeline(std::mt19937_64& rng, const PipelineSetup& setup, const PipelineSource& src) {
  const Subset ground = setup.ctx.ground();
  const auto& action = setup.ctx.w().action;
  Pipeline p;
  p.level = static_cast<int>(rng() % (popcount(ground) + 1));
  p.witness = Witness{src.set, action, kAnyLevel, {}};
  const int terms = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < terms; ++t) {
    const Ensemble pi = random_ideal_element(rng, ground, p.level);
    const Morphism& v = src.maps[rng() % src.maps.size()];
    if (pi.is_zero()) continue;
    p.witness += single_term_witness(pi, v, p.level, action);
    for (const auto& [key, c] : pi.terms()) p.value.add(morphism_key(compose(action->of(subset_from_key(key)), v)), c);
  }
  return p;
}

std::vector<CaseReport> witnesses_suite(const SuiteBounds& b) {
  std::vector<CaseReport> out;
  out.push_back(run_case("witnesses", {{"check", "omega annihilation"}, {"max_i", b.max_i}}, [&](Checks& c, CaseReport&) {
    for (int n = 0; n <= b.max_i; ++n) {
      for (Subset j : subsets_of(full_set(n))) {
        for (Subset k : subsets_of(full_set(n))) {
          const Ensemble product = ring_product(omega(j), subset_element(k));
          const std::string at = subset_to_string(j) + " against " + subset_to_string(k);
          if (is_subset(j, k)) {
            c.require(product == omega(j), "omega is fixed by a superset: " + at);
          } else {
            c.require(product.is_zero(), "omega vanishes: " + at);
          }
        }
      }
    }
  }));
  out.push_back(run_case("witnesses", {{"check", "ideal membership"}, {"max_i", b.max_i}}, [&](Checks& c, CaseReport&) {
    std::mt19937_64 rng(b.seed * 31 + 5);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int t = 0; t < 100; ++t) {
      const int n = 1 + t % std::max(1, b.max_i);
      const Subset ground = full_set(n);
      const int s = static_cast<int>(rng() % (n + 1));
      const Ensemble pi = random_ideal_element(rng, ground, s);
      const auto cert = ideal_membership(pi, ground, s);
      c.require(cert.member, "generated element is a member");
      c.none(ideal_certificate_failure(pi, ground, s, cert), "certificate reproduces the element");
      Ensemble any;
      for (int k = 0; k < 4; ++k) any.add(subset_key(static_cast<Subset>(rng() % (ground + 1))), coeff(rng));
      for (int level = 0; level <= n; ++level) {
        c.require(ideal_membership(any, ground, level).member == ideal_oracle(any, ground, level),
                  "membership matches the coordinate oracle");
      }
    }
  }));
  out.push_back(run_case("witnesses", {{"check", "action laws"}, {"max_i", b.max_i}}, [&](Checks& c, CaseReport&) {
    for (int i = 0; i <= b.max_i; ++i) {
      const WedgeW w = build_w(full_set(i), 2);
      c.none(w_invariant_failure(w), "W invariants");
      const ReducedCone cone = make_reduced_cone(w.set);
      c.none(action_failure(cone_action(*w.action, cone)), "cone action");
    }
  }));
  out.push_back(run_case("witnesses", {{"check", "transform pipelines"}}, [&](Checks& c, CaseReport&) {
    std::mt19937_64 rng(b.seed * 37 + 11);
    std::vector<std::unique_ptr<PipelineSetup>> setups;
    setups.push_back(std::make_unique<PipelineSetup>(1, 0b0));
    if (b.max_i >= 2) setups.push_back(std::make_unique<PipelineSetup>(2, 0b01));
    long applied[4] = {0, 0, 0, 0};
    for (int trial = 0; trial < 100; ++trial) {
      const PipelineSetup& setup = *setups[trial % setups.size()];
      const auto& ctx = setup.ctx;
      const PipelineSource& src = setup.sources[rng() % setup.sources.size()];
      const Support support = ctx.w().support(setup.l);
      Pipeline p = start_pipeline(rng, setup, src);
      const std::string at = " (pipeline " + std::to_string(trial) + ")";
      c.none(witness_failure(p.value, p.witness, p.level, &support), "initial witness" + at);
      const int steps = 1 + static_cast<int>(rng() % 3);
      for (int step = 0; step < steps; ++step) {
        const int kind = static_cast<int>(rng() % 4);
        if (kind == 0) {
          if (src.into.empty() || p.witness.source != src.set) continue;
          const Morphism& k = src.into[rng() % src.into.size()];
          p.value = precompose(p.value, ctx.w().set, k);
          p.witness = restrict_witness(p.witness, k);
        } else if (kind == 1) {
          const Morphism& h = ctx.w().action->of(static_cast<Subset>(rng() % (ctx.ground() + 1)));
          p.value = postcompose(p.value, p.witness.source, h);
          p.witness = map_witness(p.witness, h, ctx.w().action);
        } else if (kind == 2) {
          const ReducedCone source_cone = make_reduced_cone(p.witness.source);
          p.value = map_ensemble(p.value, [&](const Key& key) {
            return morphism_key(reduced_cone_map(source_cone, ctx.cone_w(),
                                                 morphism_from_key(source_cone.base, ctx.w().set, key)));
          });
          p.witness = cone_witness(p.witness, source_cone, ctx.cone_w(), ctx.cone_action_w());
          c.none(witness_failure(p.value, p.witness, p.level, &ctx.cone_support(setup.l)), "coned witness" + at);
          const Morphism& sigma = ctx.contraction(setup.l, lowest_element(ctx.ground() & ~setup.l));
          p.value = postcompose(p.value, p.witness.source, sigma);
          p.witness = map_witness(p.witness, sigma, ctx.w().action, &ctx.cone_support(setup.l));
        } else {
          Pipeline other = start_pipeline(rng, setup, setup.sources[rng() % setup.sources.size()]);
          const Wedge wedge = make_wedge({p.witness.source, other.witness.source}, 2);
          p.value = wedge_product(wedge, ctx.w().set, {p.value, other.value});
          p.witness = wedge_witness({&p.witness, &other.witness}, wedge);
          p.level += other.level;
        }
        ++applied[kind];
        c.none(witness_failure(p.value, p.witness, p.level, &support), "after transform " + std::to_string(kind) + at);
        if (kind == 3) break;
      }
    }
    for (int k = 0; k < 4; ++k) c.require(applied[k] > 0, "every transform is exercised");
  }));
  return out;
}

// ------------------------------------------------------------------- brunnian

bool cancels_to_identity(FreeWord w) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i].gen == w[i + 1].gen && w[i].exp == -w[i + 1].exp) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w.empty();
}

bool deletion_oracle(const FreeWord& w, int gens) {
  for (Subset j = 0; j < full_set(gens); ++j) {
    FreeWord kept;
    for (const auto& l : w) {
      if (j >> l.gen & 1) kept.push_back(l);
    }
    if (!cancels_to_identity(kept)) return false;
  }
  return true;
}

FreeWord random_word(std::mt19937_64& rng, int gens, int length) {
  FreeWord w;
  for (int i = 0; i < length; ++i) w.push_back({static_cast<int>(rng() % gens), rng() % 2 ? 1 : -1});
  return w;
}

// Products of nested commutators whose leaves are conjugates of distinct
// generators.
FreeWord random_brunnian(std::mt19937_64& rng, int gens) {
  const auto nestings = all_nestings(gens);
  FreeWord out;
  const int factors = 1 + static_cast<int>(rng() % 3);
  for (int f = 0; f < factors; ++f) {
    auto perm = range_of(gens);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<FreeWord> leaves;
    for (int g : perm) {
      const FreeWord conj = random_word(rng, gens, 2);
      leaves.push_back(concat(concat(conj, FreeWord{{g, rng() % 2 ? 1 : -1}}), inverse(conj)));
    }
    FreeWord term = nested_commutator(nestings[rng() % nestings.size()], leaves);
    if (rng() % 2) term = inverse(term);
    out = concat(out, term);
  }
  return out;
}

std::vector<CaseReport> brunnian_suite(const SuiteBounds& b) {
  std::vector<CaseReport> out;
  out.push_back(run_case("brunnian", {{"check", "deletion oracle"}, {"alphabet", 2}, {"max_length", 8}},
                         [&](Checks& c, CaseReport&) {
    const Letter letters[] = {{0, 1}, {0, -1}, {1, 1}, {1, -1}};
    for (int length = 0; length <= 8; ++length) {
      std::vector<int> digits(length, 0);
      while (true) {
        FreeWord w;
        for (int d : digits) w.push_back(letters[d]);
        c.require(is_brunnian(w, 0b11) == deletion_oracle(w, 2), "word " + format_word(w));
        int i = 0;
        for (; i < length; ++i) {
          if (++digits[i] < 4) break;
          digits[i] = 0;
        }
        if (i == length) break;
      }
    }
  }));
  out.push_back(run_case("brunnian", {{"check", "nested commutators"}, {"max_weight", 4}}, [&](Checks& c, CaseReport&) {
    for (int s = 1; s <= 4; ++s) {
      std::vector<FreeWord> gens;
      for (int g = 0; g < s; ++g) gens.push_back(generator_word(g));
      for (const auto& t : all_nestings(s)) {
        const FreeWord w = nested_commutator(t, gens);
        c.require(!w.empty() && is_brunnian(w, full_set(s)), "nesting " + to_string(t));
        c.require(deletion_oracle(w, s), "oracle on nesting " + to_string(t));
      }
    }
  }));
  out.push_back(run_case("brunnian", {{"check", "left comb degree"}, {"max_weight", 4}}, [&](Checks& c, CaseReport&) {
    for (int s = 1; s <= 4; ++s) {
      std::vector<FreeWord> gens;
      for (int g = 0; g < s; ++g) gens.push_back(generator_word(g));
      const FreeWord w = nested_commutator(left_comb(s), gens);
      c.require(lcs_degree(w, s) == s, "left comb of weight " + std::to_string(s));
      c.require(lcs_degree(w, s + 1) == s, "left comb of weight " + std::to_string(s) + " at a higher degree");
    }
  }));
  out.push_back(run_case("brunnian", {{"check", "random brunnian words"}, {"max_i", std::min(3, b.max_i)}},
                         [&](Checks& c, CaseReport&) {
    std::mt19937_64 rng(b.seed * 41 + 3);
    const int top = std::max(1, std::min(3, b.max_i));
    for (int t = 0; t < 100; ++t) {
      const int gens = 1 + t % top;
      const FreeWord w = random_brunnian(rng, gens);
      const std::string at = " for " + format_word(w);
      c.require(is_brunnian(w, full_set(gens)) && deletion_oracle(w, gens), "generated word is Brunnian" + at);
      const auto d = lcs_degree(w, gens);
      c.require(!d || *d >= gens, "lcs degree at least |I|" + at);
    }
  }));
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"identities", "nabla",       "lift",      "fissilizer",
                                              "simplicial", "retractions", "witnesses", "brunnian"};
  return names;
}

std::vector<CaseReport> run_suite(const std::string& name, const SuiteBounds& bounds) {
  if (name == "identities") return identities_suite(bounds);
  if (name == "nabla") return nabla_suite(bounds);
  if (name == "lift") return lift_suite(bounds);
  if (name == "fissilizer") return fissilizer_suite(bounds);
  if (name == "simplicial") return simplicial_suite(bounds);
  if (name == "retractions") return retractions_suite(bounds);
  if (name == "witnesses") return witnesses_suite(bounds);
  if (name == "brunnian") return brunnian_suite(bounds);
  throw UnknownSuite("unknown suite: " + name);
}

namespace {

void record_items(Checks& c, CaseReport& r, const std::vector<CheckItem>& items) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& item : items) {
    c.require(item.pass, item.condition + ": " + item.detail);
    list.push_back({{"condition", item.condition}, {"pass", item.pass}});
  }
  r.result["items"] = list;
}

}  // namespace

CaseReport run_construct_p(int i, int e, const std::filesystem::path& out) {
  return run_case("construct-pj", {{"i", i}, {"e", e}, {"out", out.string()}}, [&](Checks& c, CaseReport& r) {
    check_construction_guard(i, e);
    const WedgeContext ctx(i, e);
    const PTable table = construct_p(ctx);
    r.artifacts = write_artifacts(out, ctx, table, nullptr);
    r.result = {{"entries", table.entries.size()}};
    record_items(c, r, check_artifacts(out));
  });
}

CaseReport run_construct_q(int i, int e, const std::optional<std::filesystem::path>& out) {
  nlohmann::json params{{"i", i}, {"e", e}};
  if (out) params["out"] = out->string();
  return run_case("construct-q", params, [&](Checks& c, CaseReport& r) {
    check_construction_guard(i, e);
    const std::filesystem::path dir =
        out ? *out
            : std::filesystem::temp_directory_path() / ("fissile-construct-q-" + std::to_string(i) + "-" + std::to_string(e));
    const WedgeContext ctx(i, e);
    const PTable table = construct_p(ctx);
    const ConstructedQ q = construct_q(ctx, table);
    auto written = write_artifacts(dir, ctx, table, &q);
    if (out) r.artifacts = std::move(written);
    r.result = {{"entries", table.entries.size()}, {"layouts", q.almost_fissility.size()}};
    record_items(c, r, check_artifacts(dir));
    if (!out) std::filesystem::remove_all(dir);
  });
}

CaseReport run_check(const std::filesystem::path& in) {
  return run_case("check-pj", {{"in", in.string()}}, [&](Checks& c, CaseReport& r) {
    record_items(c, r, check_artifacts(in));
  });
}

}  // namespace fissile
