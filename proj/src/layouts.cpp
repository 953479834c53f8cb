#include "fissile/layouts.hpp"

#include <algorithm>
#include <functional>

namespace fissile {

Layout make_layout(std::vector<Subset> blocks) {
  Subset seen = 0;
  for (Subset b : blocks) {
    if (b == 0) throw LayoutError("layout block is empty");
    if ((seen & b) != 0) throw LayoutError("layout blocks overlap");
    seen |= b;
  }
  std::sort(blocks.begin(), blocks.end(), lex_less);
  return Layout{std::move(blocks)};
}

Layout top_layout(Subset ground) { return make_layout({ground}); }

Subset layout_support(const Layout& a) {
  Subset s = 0;
  for (Subset b : a.blocks) s |= b;
  return s;
}

std::vector<Layout> enumerate_layouts(Subset ground) {
  const long guard = env_guard("FISSILE_MAX_LAYOUT_SIZE", 4);
  if (ground == 0) throw LayoutError("layouts need a nonempty ground set");
  if (popcount(ground) > guard) throw GuardExceeded("layout enumeration exceeds FISSILE_MAX_LAYOUT_SIZE");
  // Each element of the ground set is either unused, opens a new block, or
  // joins the block of some earlier element.
  const auto elems = elements(ground);
  std::vector<Layout> out;
  std::vector<Subset> blocks;
  std::function<void(std::size_t)> rec = [&](std::size_t at) {
    if (at == elems.size()) {
      out.push_back(make_layout(blocks));
      return;
    }
    const Subset bit = Subset{1} << elems[at];
    rec(at + 1);
    blocks.push_back(bit);
    rec(at + 1);
    blocks.pop_back();
    for (auto& b : blocks) {
      b |= bit;
      rec(at + 1);
      b &= ~bit;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const Layout& a, const Layout& b) { return layout_key(a) < layout_key(b); });
  return out;
}

bool layout_geq(const Layout& a, const Layout& b) {
  return std::all_of(b.blocks.begin(), b.blocks.end(), [&](Subset g) {
    return std::any_of(a.blocks.begin(), a.blocks.end(), [&](Subset f) { return is_subset(g, f); });
  });
}

Layout layout_meet(const Layout& a, const Layout& b) {
  std::vector<Subset> blocks;
  for (Subset f : a.blocks) {
    for (Subset g : b.blocks) {
      if ((f & g) != 0) blocks.push_back(f & g);
    }
  }
  return make_layout(std::move(blocks));
}

Subset resolve_block(const Layout& a, Subset g) {
  for (Subset f : a.blocks) {
    if (is_subset(g, f)) return f;
  }
  throw LayoutError("no block of " + layout_to_string(a) + " includes " + subset_to_string(g));
}

AbstractComplex layout_complex(const Layout& a) { return complex_from_facets(a.blocks); }

Key layout_key(const Layout& a) {
  KeyWriter w;
  w.u32(static_cast<std::uint32_t>(a.blocks.size()));
  for (Subset b : a.blocks) w.nested(encode_ints(elements(b)));
  return std::move(w).finish();
}

Layout layout_from_key(const Key& key) {
  KeyReader r(key);
  const auto n = r.u32();
  std::vector<Subset> blocks;
  for (std::uint32_t i = 0; i < n; ++i) blocks.push_back(subset_of(decode_ints(r.nested())));
  r.expect_done();
  return make_layout(std::move(blocks));
}

nlohmann::json layout_to_json(const Layout& a) {
  auto j = nlohmann::json::array();
  for (Subset b : a.blocks) j.push_back(subset_to_json(b));
  return j;
}

Layout layout_from_json(const nlohmann::json& j) {
  std::vector<Subset> blocks;
  for (const auto& b : j) blocks.push_back(subset_from_json(b));
  return make_layout(std::move(blocks));
}

std::string layout_to_string(const Layout& a) {
  std::string s = "{";
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    if (i) s += ",";
    s += subset_to_string(a.blocks[i]);
  }
  return s + "}";
}

LayoutLattice::LayoutLattice(Subset ground) : ground_(ground), layouts_(enumerate_layouts(ground)) {
  for (int i = 0; i < size(); ++i) index_.emplace(layout_key(layouts_[i]), i);
  top_ = index_of(top_layout(ground));
  geq_.assign(size(), std::vector<char>(size(), 0));
  meet_.assign(size(), std::vector<int>(size(), 0));
  for (int a = 0; a < size(); ++a) {
    for (int b = 0; b < size(); ++b) {
      geq_[a][b] = layout_geq(layouts_[a], layouts_[b]);
      meet_[a][b] = index_of(layout_meet(layouts_[a], layouts_[b]));
    }
  }
}

int LayoutLattice::index_of(const Layout& a) const {
  auto it = index_.find(layout_key(a));
  if (it == index_.end()) throw LayoutError("layout " + layout_to_string(a) + " is not in the lattice");
  return it->second;
}

FinitePoset layout_poset(const LayoutLattice& lattice) {
  std::vector<Key> keys;
  for (const auto& a : lattice.layouts()) keys.push_back(layout_key(a));
  return FinitePoset(std::move(keys), [&](int b, int a) { return lattice.geq(a, b); });
}

}  // namespace fissile
