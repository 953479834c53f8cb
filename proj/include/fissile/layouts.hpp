#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "fissile/key.hpp"
#include "fissile/posets.hpp"
#include "fissile/simplicial/complexes.hpp"
#include "fissile/subset.hpp"

namespace fissile {

class LayoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A set of pairwise disjoint nonempty blocks, kept in lexicographic order of
/// their sorted element lists.
struct Layout {
  std::vector<Subset> blocks;

  friend bool operator==(const Layout&, const Layout&) = default;
};

/// Validates disjointness and nonemptiness, then sorts.
Layout make_layout(std::vector<Subset> blocks);
Layout top_layout(Subset ground);
Subset layout_support(const Layout& a);

/// All layouts of `ground` ordered by canonical key. The size guard defaults
/// to 4 and is read from FISSILE_MAX_LAYOUT_SIZE.
std::vector<Layout> enumerate_layouts(Subset ground);

/// A ≥ B: every block of B lies in some block of A.
bool layout_geq(const Layout& a, const Layout& b);
Layout layout_meet(const Layout& a, const Layout& b);
/// The block of A including G; throws LayoutError when there is none.
Subset resolve_block(const Layout& a, Subset g);

/// Δ[A]: the disjoint union of the full simplices on the blocks.
AbstractComplex layout_complex(const Layout& a);

Key layout_key(const Layout& a);
Layout layout_from_key(const Key& key);
nlohmann::json layout_to_json(const Layout& a);
Layout layout_from_json(const nlohmann::json& j);
std::string layout_to_string(const Layout& a);

/// A(E) with indices into the canonical enumeration.
class LayoutLattice {
 public:
  explicit LayoutLattice(Subset ground);

  Subset ground() const noexcept { return ground_; }
  int size() const noexcept { return static_cast<int>(layouts_.size()); }
  const Layout& at(int i) const { return layouts_.at(static_cast<std::size_t>(i)); }
  const std::vector<Layout>& layouts() const noexcept { return layouts_; }
  int index_of(const Layout& a) const;
  int top() const noexcept { return top_; }
  bool geq(int a, int b) const { return geq_[a][b] != 0; }
  int meet(int a, int b) const { return meet_[a][b]; }

 private:
  Subset ground_;
  std::vector<Layout> layouts_;
  std::map<Key, int> index_;
  std::vector<std::vector<char>> geq_;
  std::vector<std::vector<int>> meet_;
  int top_ = 0;
};

/// A(E) as a poset (B ≤ A iff A ≥ B) with layout keys as elements.
FinitePoset layout_poset(const LayoutLattice& lattice);

}  // namespace fissile
