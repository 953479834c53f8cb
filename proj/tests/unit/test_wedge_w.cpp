#include "catch_amalgamated.hpp"

#include <filesystem>
#include <fstream>

#include "fissile/wedge_w.hpp"

using namespace fissile;

namespace {

bool has_nondegenerate_edge_at(const SimplicialSet& s, int vertex) {
  for (int x : s.nondegenerate(1)) {
    if (s.face(1, x, 0) == vertex || s.face(1, x, 1) == vertex) return true;
  }
  return false;
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("fissile_unit_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

nlohmann::json load(const std::filesystem::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

void store(const std::filesystem::path& p, const nlohmann::json& j) {
  std::ofstream out(p);
  out << j.dump();
}

int failing(const std::vector<CheckItem>& items) {
  int n = 0;
  for (const auto& item : items) n += !item.pass;
  return n;
}

bool fails(const std::vector<CheckItem>& items, const std::string& prefix) {
  for (const auto& item : items) {
    if (!item.pass && item.condition.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("W over the empty index set is two points", "[wedge_w]") {
  const WedgeW w = build_w(0, 2);
  REQUIRE(w.components.size() == 1);
  REQUIRE(w.set->count(0) == 2);
  REQUIRE(w.set->max_nondegenerate_dim() == 0);
  REQUIRE(w.lead_vertex() != w.set->basepoint());
}

TEST_CASE("W over a single index", "[wedge_w]") {
  const WedgeW w = build_w(0b1, 2);
  REQUIRE(w.components.size() == 2);
  // Component {0} is the suspension of the empty thick simplex.
  REQUIRE(w.components[1].set->count(0) == 2);
  REQUIRE_FALSE(has_nondegenerate_edge_at(*w.set, w.lead_vertex()));
  REQUIRE(has_nondegenerate_edge_at(*w.set, w.top_vertex(0)));
  // ∅ sends everything into component ∅.
  const Morphism& collapse = w.action->of(0);
  REQUIRE(collapse(0, w.lead_vertex()) == w.top_vertex(0));
  for (int n = 0; n <= w.bound; ++n) {
    for (int x = 0; x < w.set->count(n); ++x) {
      REQUIRE(w.support(0)[n][collapse(n, x)]);
    }
  }
}

TEST_CASE("W invariants and supports", "[wedge_w]") {
  for (int i = 0; i <= 3; ++i) {
    const Subset ground = full_set(i);
    const WedgeW w = build_w(ground, i == 3 ? 1 : 2);
    REQUIRE(w_invariant_failure(w).empty());
    REQUIRE(w.components.size() == (std::size_t{1} << i));
    for (int n = 0; n <= w.bound; ++n) {
      for (int x = 0; x < w.set->count(n); ++x) {
        REQUIRE(w.support(ground)[n][x]);
        if (i == 0 || w.proper_support()[n][x]) continue;
        REQUIRE_FALSE(w.support(ground & ~Subset{1})[n][x]);
      }
    }
  }
  REQUIRE_THROWS_AS(build_w(0b1111, 1), GuardExceeded);
}

TEST_CASE("the action moves xi between components", "[wedge_w]") {
  for (int i = 1; i <= 2; ++i) {
    const WedgeContext ctx(i, 2);
    for (Subset f = 1; f <= ctx.faces(); ++f) {
      for (Subset j = 0; j <= ctx.ground(); ++j) {
        const Morphism xi = ctx.xi(j, f);
        REQUIRE(check_morphism(xi).empty());
        REQUIRE(lands_in(xi, ctx.w().support(j)));
        for (Subset k = 0; k <= ctx.ground(); ++k) {
          REQUIRE(same_map(act(*ctx.w().action, k, xi), ctx.xi(k & j, f)));
        }
      }
    }
  }
}

TEST_CASE("omega acting on xi expands over subsets", "[wedge_w]") {
  const WedgeContext ctx(2, 1);
  const Morphism xi = ctx.xi(0b11, 0b1);
  Ensemble expected;
  for (Subset k : subsets_of(0b11)) {
    expected.add(morphism_key(ctx.xi(k, 0b1)), popcount(0b11 & ~k) % 2 ? -1 : 1);
  }
  REQUIRE(act_ring(*ctx.w().action, omega(0b11), xi) == expected);
  // ω_J vanishes on ξ_K for J ⊄ K.
  REQUIRE(act_ring(*ctx.w().action, omega(0b11), ctx.xi(0b01, 0b1)).is_zero());
}

TEST_CASE("the contraction restricts to the identity on its support", "[wedge_w]") {
  for (const auto& [i, e] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
    const WedgeContext ctx(i, e);
    const Morphism include = ctx.cone_w().inclusion();
    for (Subset l = 0; l < ctx.ground(); ++l) {
      const Support support = ctx.w().support(l);
      for (int letter : elements(ctx.ground() & ~l)) {
        const Morphism& sigma = ctx.contraction(l, letter);
        for (int n = 0; n <= ctx.bound(); ++n) {
          for (int x = 0; x < ctx.w().set->count(n); ++x) {
            if (!support[n][x]) continue;
            REQUIRE(ctx.cone_support(l)[n][include(n, x)]);
            REQUIRE(sigma(n, include(n, x)) == x);
          }
        }
        // σ lands in W^L and commutes with the action.
        for (int n = 0; n <= ctx.bound(); ++n) {
          for (int x = 0; x < ctx.cone_w().set->count(n); ++x) {
            if (!ctx.cone_support(l)[n][x]) continue;
            REQUIRE(support[n][sigma(n, x)]);
          }
        }
        REQUIRE(is_equivariant(*ctx.cone_action_w(), *ctx.w().action, sigma, &ctx.cone_support(l)));
      }
    }
  }
}

TEST_CASE("fillings extend their boundary values", "[wedge_w]") {
  const WedgeContext ctx(2, 2);
  for (Subset f = 1; f <= ctx.faces(); ++f) {
    const Morphism& plus = ctx.cones().plus_inclusion(f);
    for (Subset l = 0; l < ctx.ground(); ++l) {
      for (Subset j : subsets_of(l)) {
        const Ensemble boundary = Ensemble::singleton(morphism_key(ctx.xi(j, f)));
        const int letter = lowest_element(ctx.ground() & ~l);
        const Ensemble filled = ctx.fill(boundary, f, l, letter);
        REQUIRE(precompose(filled, ctx.w().set, plus) == boundary);
        REQUIRE(ctx.lands_failure(filled, f, ctx.w().support(l)).empty());
      }
      const Morphism point = constant_morphism(ctx.cones().plus(f), ctx.w().set, ctx.w().set->basepoint());
      const Morphism filled = ctx.filling(point, ctx.plus_cone(f), l, lowest_element(ctx.ground() & ~l));
      for (int n = 0; n <= ctx.bound(); ++n) {
        for (int x = 0; x < filled.source->count(n); ++x) {
          REQUIRE(filled(n, x) == ctx.w().set->basepoint_simplex(n));
        }
      }
    }
  }
}

TEST_CASE("construction guard", "[wedge_w]") {
  REQUIRE_NOTHROW(check_construction_guard(2, 2));
  REQUIRE_NOTHROW(check_construction_guard(3, 1));
  REQUIRE_THROWS_AS(check_construction_guard(3, 2), GuardExceeded);
  REQUIRE_THROWS_AS(check_construction_guard(5, 5), GuardExceeded);
}

TEST_CASE("construction and independent check", "[wedge_w][construct]") {
  for (const auto& [i, e] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
    CAPTURE(i, e);
    const WedgeContext ctx(i, e);
    const PTable table = construct_p(ctx);
    REQUIRE(table.entries.size() == ((std::size_t{1} << e) - 1) * ((std::size_t{1} << i) - 1));
    for (Subset f = 1; f <= ctx.faces(); ++f) {
      // p_∅^F is the constant map onto the top of component ∅ extended over T_F.
      const Ensemble& p = table.at(f, 0).p;
      REQUIRE(ctx.restrict_to_plus(p, f) == Ensemble::singleton(morphism_key(ctx.xi(0, f))));
    }
    const ConstructedQ q = construct_q(ctx, table);
    const auto dir = scratch_dir("construct_" + std::to_string(i) + "_" + std::to_string(e));
    write_artifacts(dir, ctx, table, &q);
    const auto items = check_artifacts(dir);
    for (const auto& item : items) {
      CAPTURE(item.condition, item.detail);
      CHECK(item.pass);
    }
    REQUIRE(items.size() > table.entries.size() * 4);
    std::filesystem::remove_all(dir);
  }
}

TEST_CASE("the checker rejects tampered artifacts", "[wedge_w][construct]") {
  const WedgeContext ctx(2, 1);
  const PTable table = construct_p(ctx);
  const ConstructedQ q = construct_q(ctx, table);
  const auto dir = scratch_dir("tamper");
  write_artifacts(dir, ctx, table, &q);
  REQUIRE(failing(check_artifacts(dir)) == 0);

  const auto manifest = load(dir / "manifest.json");
  const std::string entry_file = manifest.at("entries").back().at("file");
  const auto original_entry = load(dir / entry_file);
  const auto original_q = load(dir / "q.json");

  SECTION("altered coefficient in p") {
    auto j = original_entry;
    auto& c = j.at("p").at(0).at("coeff");
    c = std::to_string(std::stoi(c.get<std::string>()) + 1);
    store(dir / entry_file, j);
    const auto items = check_artifacts(dir);
    REQUIRE(failing(items) > 0);
    REQUIRE(fails(items, "boundary value"));
  }
  SECTION("altered witness coefficient") {
    auto j = original_entry;
    auto& blocks = j.at("witness").at("blocks");
    REQUIRE_FALSE(blocks.empty());
    auto& c = blocks.at(0).at("coeff");
    c = std::to_string(std::stoi(c.get<std::string>()) + 1);
    store(dir / entry_file, j);
    REQUIRE(fails(check_artifacts(dir), "alternating filtration"));
  }
  SECTION("raised level claim") {
    auto j = original_entry;
    j["level"] = j["level"].get<int>() + 1;
    store(dir / entry_file, j);
    REQUIRE(failing(check_artifacts(dir)) > 0);
  }
  SECTION("missing entry") {
    auto m = manifest;
    m.at("entries").erase(m.at("entries").size() - 1);
    store(dir / "manifest.json", m);
    REQUIRE(failing(check_artifacts(dir)) > 0);
  }
  SECTION("altered q") {
    auto j = original_q;
    auto& c = j.at("q").at(0).at("coeff");
    c = std::to_string(std::stoi(c.get<std::string>()) + 1);
    store(dir / "q.json", j);
    REQUIRE(fails(check_artifacts(dir), "q is the alternating sum"));
  }
  SECTION("dropped boundary witness") {
    auto j = original_q;
    j.at("boundary").at("blocks") = nlohmann::json::array();
    store(dir / "q.json", j);
    REQUIRE(fails(check_artifacts(dir), "boundary condition"));
  }
  SECTION("wrong index set") {
    auto m = manifest;
    m["i"] = 1;
    store(dir / "manifest.json", m);
    REQUIRE(failing(check_artifacts(dir)) > 0);
  }
  std::filesystem::remove_all(dir);
}
