#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fissile/ensemble.hpp"

namespace fissile {

/// Outcome of a membership query. On success `coefficients[i]` multiplies
/// generator i and the combination has been re-evaluated against the query.
struct Membership {
  bool member = false;
  std::vector<Integer> coefficients;
  std::string reason;
};

/// The subgroup of an ensemble group spanned by finitely many generators,
/// kept as an integer row echelon basis together with the unimodular
/// transform back to the generators. Generators may be added incrementally.
class SubgroupLattice {
 public:
  SubgroupLattice() = default;
  explicit SubgroupLattice(const std::vector<Ensemble>& generators);

  void add(const Ensemble& generator);
  Membership decide(const Ensemble& v) const;
  bool contains(const Ensemble& v) const { return decide(v).member; }

  const std::vector<Ensemble>& generators() const noexcept { return generators_; }
  /// Rank of the spanned lattice.
  std::size_t rank() const noexcept { return rows_.size(); }

 private:
  using Sparse = std::map<int, Integer>;
  struct Row {
    Sparse entries;    // column -> value; the first entry is the pivot
    Sparse transform;  // generator index -> multiplier
  };

  Sparse to_columns(const Ensemble& v, bool extend);

  std::vector<Ensemble> generators_;
  std::map<Key, int> columns_;
  std::map<int, Row> rows_;  // pivot column -> row
};

Membership subgroup_membership(const Ensemble& v, const std::vector<Ensemble>& generators);

/// Σ c_i g_i.
Ensemble linear_combination(const std::vector<Ensemble>& generators, const std::vector<Integer>& coefficients);

}  // namespace fissile
