#include "catch_amalgamated.hpp"

#include <random>

#include "fissile/fissilizer.hpp"
#include "fissile/simplicial/constructions.hpp"
#include "fissile/simplicial/enumerate.hpp"

using namespace fissile;

namespace {

const Key kPoint = encode_tuple(std::vector<Key>{});

Ensemble random_q(const LayoutPresheaf& m, Subset f, std::mt19937_64& rng, int max_terms = 4) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> terms(1, max_terms);
  Ensemble q;
  const int t = terms(rng);
  for (int i = 0; i < t; ++i) q.add(m.sample(f, rng), coeff(rng));
  return q;
}

// All labellings of ΔF by the labelling presheaf, as keys.
std::vector<Key> all_labellings(const LabellingPresheaf& m, Subset f, int labels) {
  const auto cells = m.cells(f).size();
  std::vector<Key> out;
  std::vector<int> digits(cells, 0);
  while (true) {
    out.push_back(encode_ints(digits));
    std::size_t i = 0;
    for (; i < cells; ++i) {
      if (++digits[i] < labels) break;
      digits[i] = 0;
    }
    if (i == cells) break;
  }
  return out;
}

// Independent fissility oracle for vertex labellings: R|_A is computed by
// slicing label vectors by hand and R^□(A) by expanding the product of the
// face restrictions term by term.
bool vertex_fissility_oracle(const Ensemble& r, Subset e) {
  const auto positions = [&](Subset f) {
    std::vector<int> pos;
    int p = 0;
    for (int v : elements(e)) {
      if (f >> v & 1) pos.push_back(p);
      ++p;
    }
    return pos;
  };
  const auto slice = [&](const Key& key, Subset f) {
    const auto labels = decode_ints(key);
    std::vector<int> out;
    for (int p : positions(f)) out.push_back(labels[p]);
    return encode_ints(out);
  };
  for (const auto& a : enumerate_layouts(e)) {
    Ensemble lhs;
    for (const auto& [key, c] : r.terms()) {
      std::vector<Key> parts;
      for (Subset f : a.blocks) parts.push_back(slice(key, f));
      lhs.add(encode_tuple(parts), c);
    }
    Ensemble rhs = Ensemble::singleton(kPoint);
    for (Subset f : a.blocks) {
      Ensemble face;
      for (const auto& [key, c] : r.terms()) face.add(slice(key, f), c);
      Ensemble next;
      for (const auto& [acc, ca] : rhs.terms()) {
        auto parts = decode_tuple(acc);
        for (const auto& [key, cf] : face.terms()) {
          auto grown = parts;
          grown.push_back(key);
          next.add(encode_tuple(grown), ca * cf);
        }
      }
      rhs = next;
    }
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("q_square examples", "[fissilizer]") {
  const LabellingPresheaf m(0b11, 2, false);
  const Fissilizer phi(m);
  std::mt19937_64 rng(31);
  const Ensemble q = random_q(m, 0b11, rng);
  REQUIRE(phi.q_square(q, make_layout({})) == Ensemble::singleton(kPoint));
  REQUIRE(Fissilizer::unwrap(phi.q_square(q, top_layout(0b11))) == q);
  const Key w = m.sample(0b11, rng);
  const Key expected = encode_tuple(std::vector<Key>{m.restrict_face(0b11, 0b01, w), m.restrict_face(0b11, 0b10, w)});
  REQUIRE(phi.q_square(Ensemble::singleton(w), make_layout({0b01, 0b10})) == Ensemble::singleton(expected));
  REQUIRE(phi.restrict_to_layout(Ensemble::singleton(w), make_layout({0b01, 0b10})) == Ensemble::singleton(expected));
}

TEST_CASE("fissility of simple ensembles", "[fissilizer]") {
  const LabellingPresheaf m(0b111, 2, false);
  const Fissilizer phi(m);
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const Key w = m.sample(0b111, rng);
    REQUIRE(phi.is_fissile(Ensemble::singleton(w)));
    REQUIRE_FALSE(phi.is_fissile(Integer(2) * Ensemble::singleton(w)));
    REQUIRE_FALSE(phi.is_fissile(Ensemble{}));
  }
  REQUIRE_FALSE(phi.fissility_failure(Ensemble{}).empty());
}

TEST_CASE("fissility agrees with a hand-rolled oracle", "[fissilizer][property]") {
  const Subset e = 0b111;
  const LabellingPresheaf m(e, 2, false);
  const Fissilizer phi(m);
  std::mt19937_64 rng(33);
  int fissile = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Ensemble r = Ensemble::singleton(m.sample(e, rng)) + Ensemble::singleton(m.sample(e, rng)) -
                 Ensemble::singleton(m.sample(e, rng));
    if (trial % 3 == 0) r = phi.fissilize(r);
    const bool expected = vertex_fissility_oracle(r, e);
    REQUIRE(phi.is_fissile(r) == expected);
    fissile += expected;
  }
  REQUIRE(fissile > 0);
}

TEST_CASE("the fissilizer on a one-element ground set", "[fissilizer]") {
  const LabellingPresheaf m(0b1, 3, true);
  const Fissilizer phi(m);
  const Layout empty = make_layout({});
  const Layout top = top_layout(0b1);
  const int empty_index = phi.lattice().index_of(empty);
  const int top_index = phi.lattice().top();
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 50; ++trial) {
    const Ensemble q = random_q(m, 0b1, rng);
    const Ensemble filler = Fissilizer::unwrap(phi.extend_index(top_index, empty_index, Ensemble::singleton(kPoint)));
    REQUIRE(phi.fissilize(q) == q + (1 - augmentation(q)) * filler);
  }
}

TEST_CASE("fissilize produces fissile ensembles", "[fissilizer][property]") {
  std::mt19937_64 rng(35);
  for (Subset e : {Subset{0b1}, Subset{0b11}, Subset{0b111}}) {
    for (bool faces : {false, true}) {
      const LabellingPresheaf m(e, 2, faces);
      const Fissilizer phi(m);
      for (int trial = 0; trial < 40; ++trial) {
        const Ensemble q = random_q(m, e, rng);
        const Ensemble r = phi.fissilize(q);
        REQUIRE(phi.is_fissile(r));
        REQUIRE(augmentation(r) == 1);
        REQUIRE(phi.fissilize(r) == r);
      }
    }
  }
}

TEST_CASE("fissilizer restricts to the product of face fissilizers", "[fissilizer][property]") {
  const Subset e = 0b111;
  const LabellingPresheaf m(e, 2, true);
  const Fissilizer phi(m);
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    const Ensemble q = random_q(m, e, rng);
    const Ensemble r = phi.fissilize(q);
    for (const auto& a : phi.lattice().layouts()) {
      std::vector<Ensemble> factors;
      for (Subset f : a.blocks) {
        const Fissilizer inner(m, f);
        factors.push_back(inner.fissilize(restrict_face_ensemble(m, e, f, q)));
      }
      REQUIRE(phi.restrict_to_layout(r, a) == tuple_product(factors));
    }
  }
}

TEST_CASE("congruence check with the full group and with fissile inputs", "[fissilizer]") {
  const Subset e = 0b11;
  const int labels = 2;
  const LabellingPresheaf m(e, labels, false);
  const Fissilizer phi(m);
  std::vector<std::vector<Ensemble>> full(phi.lattice().size());
  for (int a = 0; a < phi.lattice().size(); ++a) {
    std::vector<Ensemble> factors;
    for (Subset f : phi.lattice().at(a).blocks) {
      Ensemble all;
      for (const auto& key : all_labellings(m, f, labels)) all.add(key, 1);
      factors.push_back(all);
    }
    const Ensemble every = tuple_product(factors);
    for (const auto& [key, c] : every.terms()) full[a].push_back(Ensemble::singleton(key));
  }
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const Ensemble q = random_q(m, e, rng);
    const auto report = check_fissilizer_congruence(phi, q, full);
    REQUIRE(report.hypotheses_hold);
    REQUIRE(report.conclusion_holds);

    const Ensemble fissile = phi.fissilize(q);
    const std::vector<std::vector<Ensemble>> zero(phi.lattice().size());
    const auto trivial = check_fissilizer_congruence(phi, fissile, zero);
    REQUIRE(trivial.hypotheses_hold);
    REQUIRE(trivial.conclusion_holds);
  }
}

TEST_CASE("congruence check on admissible closures", "[fissilizer][property]") {
  std::mt19937_64 rng(38);
  for (Subset e : {Subset{0b1}, Subset{0b11}}) {
    const LabellingPresheaf m(e, 2, true);
    const Fissilizer phi(m);
    for (int trial = 0; trial < 15; ++trial) {
      const Ensemble q = random_q(m, e, rng);
      std::vector<std::vector<Ensemble>> seeds(phi.lattice().size());
      for (int a = 0; a < phi.lattice().size(); ++a) {
        const Layout& layout = phi.lattice().at(a);
        seeds[a].push_back(phi.q_square(q, layout) - phi.restrict_to_layout(q, layout));
      }
      const auto n = admissible_closure(phi, seeds);
      const auto report = check_fissilizer_congruence(phi, q, n);
      REQUIRE(report.hypotheses_hold);
      REQUIRE(report.conclusion_holds);
      REQUIRE(linear_combination(n[phi.lattice().top()], report.certificate.coefficients) ==
              Fissilizer::wrap(phi.fissilize(q)) - Fissilizer::wrap(q));
    }
  }
}

TEST_CASE("congruence check reports a failed hypothesis", "[fissilizer]") {
  const LabellingPresheaf m(0b11, 2, false);
  const Fissilizer phi(m);
  std::mt19937_64 rng(39);
  Ensemble q = random_q(m, 0b11, rng);
  while (phi.is_fissile(q)) q = random_q(m, 0b11, rng);
  const std::vector<std::vector<Ensemble>> zero(phi.lattice().size());
  const auto report = check_fissilizer_congruence(phi, q, zero);
  REQUIRE_FALSE(report.hypotheses_hold);
  REQUIRE(report.diagnostic.rfind("hypothesis", 0) == 0);
}

TEST_CASE("the simplicial model presheaf", "[fissilizer][simplicial]") {
  for (Subset e : {Subset{0b1}, Subset{0b11}}) {
    const int bound = popcount(e);
    const SetPtr z = make_suspension(point_set(bound)).set;
    const SimplicialModelPresheaf m(e, z);
    const Fissilizer phi(m);
    const auto& lattice = phi.lattice();
    std::mt19937_64 rng(40 + e);

    // Identification of M̲(A) with Z^{T_A} round trips.
    for (int a = 0; a < lattice.size(); ++a) {
      const Layout& layout = lattice.at(a);
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<Key> parts;
        for (Subset f : layout.blocks) parts.push_back(m.sample(f, rng));
        const Key tuple = encode_tuple(parts);
        const Morphism v = m.tuple_to_morphism(layout, tuple);
        REQUIRE(check_morphism(v).empty());
        REQUIRE(m.morphism_to_tuple(layout, v) == tuple);
      }
    }

    // Extender axioms.
    for (int p = 0; p < lattice.size(); ++p) {
      for (int q = 0; q < lattice.size(); ++q) {
        std::vector<Key> parts;
        for (Subset f : lattice.at(q).blocks) parts.push_back(m.sample(f, rng));
        const Ensemble s = Ensemble::singleton(encode_tuple(parts));
        if (lattice.geq(p, q)) REQUIRE(phi.restrict_index(p, q, phi.extend_index(p, q, s)) == s);
        const int meet = lattice.meet(p, q);
        REQUIRE(phi.restrict_index(lattice.top(), p, phi.extend_index(lattice.top(), q, s)) ==
                phi.extend_index(p, meet, phi.restrict_index(q, meet, s)));
      }
    }

    for (int trial = 0; trial < 20; ++trial) {
      const Ensemble q = random_q(m, e, rng);
      const Ensemble r = phi.fissilize(q);
      REQUIRE(phi.is_fissile(r));
      REQUIRE(augmentation(r) == 1);
    }
  }
}
