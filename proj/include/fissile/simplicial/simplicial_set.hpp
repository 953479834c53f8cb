#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fissile/key.hpp"

namespace fissile {

class SimplicialError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A simplicial set stored explicitly in dimensions 0..bound. Simplices of
/// dimension n are the integers 0..count(n)-1.
class SimplicialSet {
 public:
  /// faces[n] (n >= 1) holds d_i x at x*(n+1)+i; degeneracies[n] (n < bound)
  /// holds s_i x at x*(n+1)+i. Throws SimplicialError unless the tables
  /// satisfy the simplicial identities.
  SimplicialSet(int bound, std::vector<int> counts, std::vector<std::vector<int>> faces,
                std::vector<std::vector<int>> degeneracies, std::optional<int> basepoint);

  int bound() const noexcept { return bound_; }
  int count(int n) const { return counts_.at(static_cast<std::size_t>(n)); }
  const std::vector<int>& counts() const noexcept { return counts_; }
  std::size_t total_simplices() const noexcept;

  int face(int n, int x, int i) const { return faces_[n][static_cast<std::size_t>(x) * (n + 1) + i]; }
  int degeneracy(int n, int x, int i) const {
    return degeneracies_[n][static_cast<std::size_t>(x) * (n + 1) + i];
  }
  const std::vector<std::vector<int>>& face_table() const noexcept { return faces_; }
  const std::vector<std::vector<int>>& degeneracy_table() const noexcept { return degeneracies_; }

  bool based() const noexcept { return basepoint_.has_value(); }
  int basepoint() const;
  std::optional<int> basepoint_if_any() const noexcept { return basepoint_; }
  /// The totally degenerate n-simplex on the basepoint.
  int basepoint_simplex(int n) const;
  /// The totally degenerate n-simplex on vertex v.
  int degenerate_vertex(int n, int v) const;

  bool is_degenerate(int n, int x) const { return degenerate_[n][x] != 0; }
  const std::vector<int>& nondegenerate(int n) const { return nondegenerate_[n]; }
  /// Largest n with a nondegenerate n-simplex, or -1 for the empty set.
  int max_nondegenerate_dim() const noexcept;

  /// Eilenberg–Zilber decomposition x = eta^*(root) with root nondegenerate
  /// and eta: [n] -> [m] a monotone surjection.
  int root(int n, int x) const { return root_[n][x]; }
  int root_dim(int n, int x) const { return static_cast<int>(root_operator(n, x).back()); }
  const std::vector<int>& root_operator(int n, int x) const { return root_op_[n][x]; }
  /// eta^* y for y of dimension m and a monotone surjection eta: [n] -> [m].
  int apply_surjection(int m, int y, std::span<const int> eta) const;

  /// The vertices x(0), ..., x(n).
  const std::vector<int>& vertices(int n, int x) const { return vertices_[n][x]; }
  /// True when every simplex is determined by its vertex sequence.
  bool vertex_determined() const;
  /// The simplex with the given vertex sequence, if any. Throws unless the
  /// set is vertex-determined.
  std::optional<int> find_by_vertices(std::span<const int> seq) const;

 private:
  void check_tables() const;
  void compute_derived();

  int bound_;
  std::vector<int> counts_;
  std::vector<std::vector<int>> faces_;
  std::vector<std::vector<int>> degeneracies_;
  std::optional<int> basepoint_;

  std::vector<std::vector<char>> degenerate_;
  std::vector<std::vector<int>> nondegenerate_;
  std::vector<std::vector<int>> root_;
  std::vector<std::vector<std::vector<int>>> root_op_;
  std::vector<std::vector<std::vector<int>>> vertices_;

  mutable std::once_flag lookup_once_;
  mutable bool vertex_determined_ = false;
  mutable std::map<std::vector<int>, int> by_vertices_;
  void build_lookup() const;
};

using SetPtr = std::shared_ptr<const SimplicialSet>;

SetPtr make_set(int bound, std::vector<int> counts, std::vector<std::vector<int>> faces,
                std::vector<std::vector<int>> degeneracies, std::optional<int> basepoint);

/// Same tables with a different (or no) basepoint.
SetPtr with_basepoint(const SimplicialSet& s, std::optional<int> basepoint);

/// Structural equality of the stored tables and basepoint.
bool same_tables(const SimplicialSet& a, const SimplicialSet& b);

/// A simplicial morphism stored as per-dimension index maps. Entries of -1
/// mark a partial map under construction.
struct Morphism {
  SetPtr source;
  SetPtr target;
  std::vector<std::vector<int>> map;

  int operator()(int n, int x) const { return map[n][x]; }
};

Morphism identity_morphism(const SetPtr& s);
/// g ∘ f.
Morphism compose(const Morphism& g, const Morphism& f);
/// Empty string when m is a simplicial morphism (and based, if asked).
std::string check_morphism(const Morphism& m, bool require_based = true);
bool same_map(const Morphism& a, const Morphism& b);

/// Morphism into a vertex-determined target induced by a vertex map.
Morphism from_vertex_map(const SetPtr& source, const SetPtr& target, std::span<const int> vertex_map);

/// Extends values given on nondegenerate simplices (other entries ignored)
/// through the Eilenberg–Zilber decomposition. No face check is made.
Morphism extend_from_nondegenerate(const SetPtr& source, const SetPtr& target,
                                   const std::vector<std::vector<int>>& values);

/// The morphism h with h ∘ p = g for a levelwise surjective p. Throws if g is
/// not constant on the fibres of p.
Morphism descend(const Morphism& p, const Morphism& g);

/// The morphism sending everything to the degenerate simplices of a vertex.
Morphism constant_morphism(const SetPtr& source, const SetPtr& target, int vertex);

/// True when every stored simplex of the image lies in `support`.
bool lands_in(const Morphism& m, const std::vector<std::vector<char>>& support);

/// Canonical key of a morphism for a fixed source: all images, dimension by
/// dimension.
Key morphism_key(const Morphism& m);
Morphism morphism_from_key(const SetPtr& source, const SetPtr& target, const Key& key);

}  // namespace fissile
