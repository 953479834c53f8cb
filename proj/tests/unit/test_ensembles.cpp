#include "catch_amalgamated.hpp"

#include <algorithm>
#include <random>

#include "fissile/ensemble.hpp"
#include "fissile/key.hpp"
#include "fissile/subgroup.hpp"
#include "fissile/subset.hpp"

using namespace fissile;

namespace {

Key k(int v) { return encode_ints(std::vector<int>{v}); }

Ensemble random_ensemble(std::mt19937_64& rng, int universe, int terms, int spread) {
  std::uniform_int_distribution<int> key(0, universe - 1);
  std::uniform_int_distribution<int> coeff(-spread, spread);
  Ensemble s;
  for (int t = 0; t < terms; ++t) s.add(k(key(rng)), coeff(rng));
  return s;
}

// Direct sum of coefficients, independent of augmentation().
Integer summed(const Ensemble& s) {
  Integer total = 0;
  for (const auto& term : s.terms()) total += term.second;
  return total;
}

}  // namespace

TEST_CASE("singleton and group law", "[ensembles]") {
  const Ensemble a = Ensemble::singleton(k(7));
  REQUIRE(a.size() == 1);
  REQUIRE(a.coefficient(k(7)) == 1);
  REQUIRE((a - a).is_zero());
  REQUIRE(augmentation(a) == 1);
  REQUIRE(augmentation(Ensemble{}) == 0);

  Ensemble b;
  b.add(k(1), 2);
  b.add(k(2), -1);
  REQUIRE(augmentation(b) == 1);
  b.add(k(2), 1);
  REQUIRE(b.size() == 1);
}

TEST_CASE("augmentation is additive and scales", "[ensembles][property]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Ensemble s = random_ensemble(rng, 6, 5, 4);
    const Ensemble t = random_ensemble(rng, 6, 5, 4);
    REQUIRE(augmentation(s + t) == summed(s) + summed(t));
    REQUIRE(augmentation(Integer(3) * s) == 3 * summed(s));
    const Ensemble sum = s + t;
    for (const auto& term : sum.terms()) REQUIRE(term.second != 0);
  }
}

TEST_CASE("map_ensemble is functorial and linear", "[ensembles][property]") {
  std::mt19937_64 rng(12);
  const auto mod3 = [](const Key& key) { return k(decode_ints(key)[0] % 3); };
  for (int trial = 0; trial < 200; ++trial) {
    const Ensemble s = random_ensemble(rng, 8, 6, 3);
    const Ensemble t = random_ensemble(rng, 8, 6, 3);
    REQUIRE(map_ensemble(s, [](const Key& key) { return key; }) == s);
    REQUIRE(map_ensemble(s, [](const Key&) { return k(0); }) == augmentation(s) * Ensemble::singleton(k(0)));
    REQUIRE(summed(map_ensemble(s, mod3)) == summed(s));
    REQUIRE(map_ensemble(s + t, mod3) == map_ensemble(s, mod3) + map_ensemble(t, mod3));
    REQUIRE(map_ensemble(Integer(-2) * s, mod3) == Integer(-2) * map_ensemble(s, mod3));
  }
}

TEST_CASE("map_ensemble over a finite table rejects unknown keys", "[ensembles]") {
  const std::map<Key, Key> f{{k(1), k(2)}};
  REQUIRE(map_ensemble(Ensemble::singleton(k(1)), f) == Ensemble::singleton(k(2)));
  REQUIRE_THROWS_AS(map_ensemble(Ensemble::singleton(k(3)), f), DomainError);
}

TEST_CASE("combining product", "[ensembles]") {
  std::vector<Ensemble> none;
  REQUIRE(tuple_product(none) == Ensemble::singleton(encode_tuple(std::vector<Key>{})));

  const std::vector<Ensemble> pair{Ensemble::singleton(k(1)), Ensemble::singleton(k(2))};
  REQUIRE(tuple_product(pair) == Ensemble::singleton(encode_tuple(std::vector<Key>{k(1), k(2)})));

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Ensemble> factors;
    Integer product = 1;
    for (int j = 0; j < 3; ++j) {
      factors.push_back(random_ensemble(rng, 4, 3, 3));
      product *= summed(factors.back());
    }
    const Ensemble p = tuple_product(factors);
    REQUIRE(augmentation(p) == product);

    // Brute expansion of every term triple.
    Ensemble expanded;
    for (const auto& [a, ca] : factors[0].terms()) {
      for (const auto& [b, cb] : factors[1].terms()) {
        for (const auto& [c, cc] : factors[2].terms()) expanded.add(encode_tuple(std::vector<Key>{a, b, c}), ca * cb * cc);
      }
    }
    REQUIRE(p == expanded);

    // Multilinearity in the middle slot.
    const Ensemble extra = random_ensemble(rng, 4, 2, 2);
    auto split = factors;
    split[1] = extra;
    auto joined = factors;
    joined[1] = factors[1] + extra;
    REQUIRE(tuple_product(joined) == p + tuple_product(split));
  }
}

TEST_CASE("ensemble JSON is sorted and round trips", "[ensembles]") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    Ensemble s = random_ensemble(rng, 10, 6, 5);
    s.add(k(99), Integer("123456789012345678901234567890"));
    const auto j = to_json(s);
    REQUIRE(ensemble_from_json(j) == s);
    for (std::size_t i = 1; i < j.size(); ++i) {
      REQUIRE(from_base64(j[i - 1]["key"].get<std::string>()) < from_base64(j[i]["key"].get<std::string>()));
    }
  }
}

TEST_CASE("keys round trip", "[ensembles]") {
  const std::vector<int> ints{0, -3, 70000};
  REQUIRE(decode_ints(encode_ints(ints)) == ints);
  const std::vector<Key> parts{encode_ints(ints), "", "xyz"};
  REQUIRE(decode_tuple(encode_tuple(parts)) == parts);
  REQUIRE(from_base64(to_base64(std::string("\x00\xff\x10", 3))) == std::string("\x00\xff\x10", 3));
  REQUIRE_THROWS_AS(decode_ints("\x01"), KeyError);
  REQUIRE(subset_from_key(subset_key(0b1011)) == 0b1011u);
}

TEST_CASE("subgroup membership examples", "[ensembles][subgroup]") {
  const Ensemble g1 = Ensemble::singleton(k(1)) + Ensemble::singleton(k(2));
  const Ensemble g2 = Ensemble::singleton(k(2)) - Ensemble::singleton(k(3));
  const auto yes = subgroup_membership(g1 + Integer(2) * g2, {g1, g2});
  REQUIRE(yes.member);
  REQUIRE(yes.coefficients == std::vector<Integer>{1, 2});

  const auto parity = subgroup_membership(Ensemble::singleton(k(1)), {Integer(2) * Ensemble::singleton(k(1))});
  REQUIRE_FALSE(parity.member);

  const auto outside = subgroup_membership(Ensemble::singleton(k(5)), {g1, g2});
  REQUIRE_FALSE(outside.member);
  REQUIRE(subgroup_membership(Ensemble{}, {}).member);
}

TEST_CASE("subgroup membership round trip", "[ensembles][subgroup][property]") {
  std::mt19937_64 rng(15);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Ensemble> gens;
    const int count = 1 + trial % 5;
    for (int i = 0; i < count; ++i) gens.push_back(random_ensemble(rng, 6, 4, 5));
    std::vector<Integer> c(count);
    for (auto& x : c) x = coeff(rng);
    const Ensemble v = linear_combination(gens, c);
    const auto m = subgroup_membership(v, gens);
    REQUIRE(m.member);
    REQUIRE(linear_combination(gens, m.coefficients) == v);

    auto shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    REQUIRE(subgroup_membership(v, shuffled).member);

    // v plus a primitive vector on a fresh coordinate is never a member.
    REQUIRE_FALSE(subgroup_membership(v + Ensemble::singleton(k(100)), gens).member);
  }
}

TEST_CASE("subgroup membership agrees with a brute-force oracle", "[ensembles][subgroup][property]") {
  // Over two coordinates, the lattice spanned by small generators is checked
  // against a search over bounded combinations.
  std::mt19937_64 rng(16);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<int, int>> raw(2);
    std::vector<Ensemble> gens;
    for (auto& [a, b] : raw) {
      a = entry(rng);
      b = entry(rng);
      Ensemble g;
      g.add(k(0), a);
      g.add(k(1), b);
      gens.push_back(g);
    }
    const int x = entry(rng);
    const int y = entry(rng);
    Ensemble v;
    v.add(k(0), x);
    v.add(k(1), y);
    bool found = false;
    for (int c1 = -40; c1 <= 40 && !found; ++c1) {
      for (int c2 = -40; c2 <= 40 && !found; ++c2) {
        found = c1 * raw[0].first + c2 * raw[1].first == x && c1 * raw[0].second + c2 * raw[1].second == y;
      }
    }
    const auto m = subgroup_membership(v, gens);
    if (found) REQUIRE(m.member);
    // With nonsingular 2x2 generators small solutions exist whenever any do.
    const int det = raw[0].first * raw[1].second - raw[0].second * raw[1].first;
    if (det != 0 && std::abs(det) <= 32) REQUIRE(m.member == found);
  }
}

TEST_CASE("incremental subgroup lattice", "[ensembles][subgroup]") {
  SubgroupLattice lattice;
  lattice.add(Integer(6) * Ensemble::singleton(k(1)));
  REQUIRE_FALSE(lattice.contains(Integer(2) * Ensemble::singleton(k(1))));
  lattice.add(Integer(4) * Ensemble::singleton(k(1)));
  const auto m = lattice.decide(Integer(2) * Ensemble::singleton(k(1)));
  REQUIRE(m.member);
  REQUIRE(linear_combination(lattice.generators(), m.coefficients) == Integer(2) * Ensemble::singleton(k(1)));
  REQUIRE(lattice.rank() == 1);
}
