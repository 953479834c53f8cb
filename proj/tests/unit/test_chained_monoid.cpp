#include "catch_amalgamated.hpp"

#include <random>

#include "fissile/chained_monoid.hpp"
#include "fissile/simplicial/enumerate.hpp"
#include "fissile/wedge_w.hpp"

using namespace fissile;

namespace {

// π ∈ ⟨P(I)⟩^[s] iff its coordinates in the ω basis vanish below s; the
// coordinate at J is Σ_{K ⊇ J} π(K).
bool ideal_oracle(const Ensemble& pi, Subset ground, int s) {
  for (Subset j : subsets_of(ground)) {
    if (popcount(j) >= s) continue;
    Integer c = 0;
    for (Subset k : subsets_of(ground)) {
      if (is_subset(j, k)) c += pi.coefficient(subset_key(k));
    }
    if (c != 0) return false;
  }
  return true;
}

Ensemble random_ring_element(std::mt19937_64& rng, Subset ground, int terms) {
  std::uniform_int_distribution<Subset> key(0, ground);
  std::uniform_int_distribution<int> coeff(-3, 3);
  Ensemble out;
  for (int t = 0; t < terms; ++t) out.add(subset_key(key(rng)), coeff(rng));
  return out;
}

Ensemble random_ideal_element(std::mt19937_64& rng, Subset ground, int s) {
  const auto gens = ideal_generators(ground, s);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  Ensemble out;
  for (int t = 0; t < 3; ++t) out += Integer(coeff(rng)) * generator_value(gens[pick(rng)]);
  return out;
}

// Independent value-level versions of the four transforms.
Ensemble cone_values(const Ensemble& e, const ReducedCone& ct, const ReducedCone& cz) {
  return map_ensemble(e, [&](const Key& key) {
    return morphism_key(reduced_cone_map(ct, cz, morphism_from_key(ct.base, cz.base, key)));
  });
}

struct Source {
  SetPtr set;
  std::vector<Morphism> into;  // based maps from other sets into this one
  std::vector<Morphism> maps;  // based maps to W landing in W^L
};

struct Fixture {
  WedgeContext ctx;
  Subset l;
  std::vector<Source> sources;

  Fixture(int i, Subset l_) : ctx(i, 2), l(l_) {
    const Support support = ctx.w().support(l);
    const auto& cones = ctx.cones();
    const auto add = [&](const SetPtr& s, std::vector<Morphism> into) {
      Source src{s, std::move(into), {}};
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
  bool coned = false;
};

Pipeline random_start(std::mt19937_64& rng, const Fixture& fx, const Source& src) {
  const Subset ground = fx.ctx.ground();
  std::uniform_int_distribution<int> rank(0, popcount(ground));
  std::uniform_int_distribution<std::size_t> pick(0, src.maps.size() - 1);
  Pipeline p;
  p.level = rank(rng);
  p.witness = Witness{src.set, fx.ctx.w().action, kAnyLevel, {}};
  const int terms = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < terms; ++t) {
    const Ensemble pi = random_ideal_element(rng, ground, p.level);
    const Morphism& v = src.maps[pick(rng)];
    if (pi.is_zero()) continue;
    p.witness += single_term_witness(pi, v, p.level, fx.ctx.w().action);
    for (const auto& [key, c] : pi.terms()) {
      p.value.add(morphism_key(compose(fx.ctx.w().action->of(subset_from_key(key)), v)), c);
    }
  }
  return p;
}

}  // namespace

TEST_CASE("omega examples and annihilation", "[chained_monoid]") {
  REQUIRE(omega(0) == subset_element(0));
  REQUIRE(omega(0b1) == subset_element(0b1) - subset_element(0));
  REQUIRE(augmentation(omega(0b11)) == 0);
  for (int n = 0; n <= 3; ++n) {
    const Subset ground = full_set(n);
    for (Subset j : subsets_of(ground)) {
      for (Subset k : subsets_of(ground)) {
        const Ensemble product = ring_product(omega(j), subset_element(k));
        if (is_subset(j, k)) {
          REQUIRE(product == omega(j));
        } else {
          REQUIRE(product.is_zero());
        }
      }
    }
  }
}

TEST_CASE("ring product is associative, commutative and unital", "[chained_monoid][property]") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 100; ++t) {
    const Ensemble a = random_ring_element(rng, 0b111, 3);
    const Ensemble b = random_ring_element(rng, 0b111, 3);
    const Ensemble c = random_ring_element(rng, 0b111, 3);
    REQUIRE(ring_product(a, b) == ring_product(b, a));
    REQUIRE(ring_product(ring_product(a, b), c) == ring_product(a, ring_product(b, c)));
    REQUIRE(ring_product(subset_element(0b111), a) == a);
  }
}

TEST_CASE("ideal membership round trips and matches the oracle", "[chained_monoid][property]") {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 3;
    const Subset ground = full_set(n);
    const int s = static_cast<int>(rng() % (n + 1));
    const Ensemble pi = random_ideal_element(rng, ground, s);
    const auto cert = ideal_membership(pi, ground, s);
    REQUIRE(cert.member);
    REQUIRE(ideal_certificate_failure(pi, ground, s, cert).empty());
    for (const auto& [c, g] : cert.terms) REQUIRE(popcount(g.j) >= s);

    const Ensemble any = random_ring_element(rng, ground, 4);
    for (int level = 0; level <= n; ++level) {
      REQUIRE(ideal_membership(any, ground, level).member == ideal_oracle(any, ground, level));
    }
  }
  REQUIRE_FALSE(ideal_membership(subset_element(0), 0b11, 1).member);
  REQUIRE_FALSE(ideal_membership(Ensemble::singleton("not a subset key"), 0b1, 0).member);
  IdealCertificate forged{true, {{Integer(1), IdealGenerator{0b11, 0b1}}}, {}};
  REQUIRE_FALSE(ideal_certificate_failure(omega(0b1), 0b11, 2, forged).empty());
}

TEST_CASE("the wedge action satisfies the monoid laws", "[chained_monoid]") {
  const WedgeContext ctx(2, 2);
  REQUIRE(action_failure(*ctx.w().action).empty());
  REQUIRE(action_failure(*ctx.cone_action_w()).empty());
  MonoidAction broken = *ctx.w().action;
  std::swap(broken.maps[0], broken.maps[1]);
  REQUIRE_FALSE(action_failure(broken).empty());
  for (Subset k = 0; k <= 0b11; ++k) {
    REQUIRE(is_equivariant(*ctx.w().action, *ctx.w().action, ctx.w().action->of(k)));
  }
}

TEST_CASE("witness transforms preserve validity on random pipelines", "[chained_monoid][property]") {
  std::mt19937_64 rng(53);
  const Fixture fixtures[] = {Fixture(1, 0b0), Fixture(2, 0b01)};
  int applied[4] = {0, 0, 0, 0};
  for (int trial = 0; trial < 100; ++trial) {
    const Fixture& fx = fixtures[trial % 2];
    const auto& ctx = fx.ctx;
    const std::size_t which = rng() % fx.sources.size();
    const Source& src = fx.sources[which];
    Pipeline p = random_start(rng, fx, src);
    REQUIRE(witness_failure(p.value, p.witness, p.level) == "");

    const int steps = 1 + static_cast<int>(rng() % 3);
    for (int step = 0; step < steps; ++step) {
      const int kind = static_cast<int>(rng() % 4);
      if (kind == 0 && !p.coned && !src.into.empty() && p.witness.source == src.set) {
        const Morphism& k = src.into[rng() % src.into.size()];
        p.value = precompose(p.value, ctx.w().set, k);
        p.witness = restrict_witness(p.witness, k);
        ++applied[0];
      } else if (kind == 1 && !p.coned) {
        const Morphism& h = ctx.w().action->of(static_cast<Subset>(rng() % (ctx.ground() + 1)));
        p.value = postcompose(p.value, p.witness.source, h);
        p.witness = map_witness(p.witness, h, ctx.w().action);
        ++applied[1];
      } else if (kind == 2 && !p.coned) {
        const ReducedCone source_cone = make_reduced_cone(p.witness.source);
        const auto cone_ptr = std::make_shared<ReducedCone>(source_cone);
        p.value = cone_values(p.value, *cone_ptr, ctx.cone_w());
        p.witness = cone_witness(p.witness, *cone_ptr, ctx.cone_w(), ctx.cone_action_w());
        p.coned = true;
        REQUIRE(witness_failure(p.value, p.witness, p.level) == "");
        // Back down through the contraction σ_i^L.
        const int i = lowest_element(ctx.ground() & ~fx.l);
        const Morphism& sigma = ctx.contraction(fx.l, i);
        p.value = postcompose(p.value, p.witness.source, sigma);
        p.witness = map_witness(p.witness, sigma, ctx.w().action, &ctx.cone_support(fx.l));
        p.coned = false;
        ++applied[2];
      } else if (kind == 3 && !p.coned) {
        Pipeline other = random_start(rng, fx, fx.sources[rng() % fx.sources.size()]);
        const Wedge wedge = make_wedge({p.witness.source, other.witness.source}, 2);
        p.value = wedge_product(wedge, ctx.w().set, {p.value, other.value});
        p.witness = wedge_witness({&p.witness, &other.witness}, wedge);
        p.level += other.level;
        p.witness.action = ctx.w().action;
        ++applied[3];
        break;
      }
      REQUIRE(witness_failure(p.value, p.witness, p.level, &(const Support&)ctx.w().support(fx.l)) == "");
    }
    REQUIRE(witness_failure(p.value, p.witness, p.level) == "");
    const Support full = ctx.w().support(fx.l);
    REQUIRE(verify_witness(p.value, p.witness, p.level, &full));
  }
  for (int n : applied) REQUIRE(n >= 10);
}

TEST_CASE("tampered witnesses are rejected", "[chained_monoid]") {
  std::mt19937_64 rng(54);
  const Fixture fx(2, 0b01);
  const Source& src = fx.sources[1];
  Pipeline p;
  do {
    p = random_start(rng, fx, src);
  } while (p.value.is_zero() || p.level == 0);
  REQUIRE(verify_witness(p.value, p.witness, p.level));

  Witness bumped = p.witness;
  bumped.blocks.front().first += 1;
  REQUIRE(witness_failure(p.value, bumped, p.level) == "sum mismatch");

  REQUIRE_FALSE(verify_witness(p.value, p.witness, p.level + 1));

  // Claiming a higher rank than the certificate supports.
  Witness overclaimed = p.witness;
  for (auto& [c, b] : overclaimed.blocks) b.parts.front().rank = popcount(fx.ctx.ground()) + 1;
  overclaimed.level = popcount(fx.ctx.ground()) + 1;
  REQUIRE_FALSE(verify_witness(p.value, overclaimed, p.level));

  // Terms outside the declared invariant subset.
  const Support none = fx.ctx.w().support(0);
  bool leaves = false;
  for (const auto& [c, b] : p.witness.blocks) {
    for (const auto& t : b.parts.front().terms) leaves = leaves || !lands_in(t.w, none);
  }
  if (leaves) REQUIRE_FALSE(verify_witness(p.value, p.witness, p.level, &none));
}

TEST_CASE("trivial witness and zero", "[chained_monoid]") {
  const WedgeContext ctx(1, 1);
  const SetPtr& t = ctx.cones().plus(0b1);
  const Morphism xi = ctx.xi(0, 0b1);
  const Ensemble v = Integer(2) * Ensemble::singleton(morphism_key(xi));
  const Witness w = trivial_witness(v, t, ctx.w().action);
  REQUIRE(verify_witness(v, w, 0));
  REQUIRE_FALSE(verify_witness(v, w, 1));
  const Witness zero = trivial_witness(Ensemble{}, t, ctx.w().action);
  REQUIRE(zero.blocks.empty());
  REQUIRE(verify_witness(Ensemble{}, zero, 5));
  REQUIRE_FALSE(verify_witness(v, zero, 0));
}

TEST_CASE("witness JSON round trip", "[chained_monoid]") {
  std::mt19937_64 rng(55);
  const Fixture fx(2, 0b01);
  for (int t = 0; t < 10; ++t) {
    const Source& src = fx.sources[t % fx.sources.size()];
    Pipeline p = random_start(rng, fx, src);
    const auto cone = std::make_shared<ReducedCone>(make_reduced_cone(src.set));
    const Witness coned = cone_witness(p.witness, *cone, fx.ctx.cone_w(), fx.ctx.cone_action_w());
    const Ensemble value = cone_values(p.value, *cone, fx.ctx.cone_w());

    SpaceTable table;
    const auto j = witness_to_json(coned, table);
    const auto spaces = SpaceTable::from_json(nlohmann::json::parse(table.to_json().dump()));
    const Witness back = witness_from_json(nlohmann::json::parse(j.dump()), cone->set, fx.ctx.cone_action_w(), spaces);
    REQUIRE(verify_witness(value, back, p.level));
    REQUIRE(evaluate(back) == evaluate(coned));
    SpaceTable again;
    REQUIRE(witness_to_json(back, again) == j);
  }
}
