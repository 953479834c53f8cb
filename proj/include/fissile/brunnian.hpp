#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "fissile/ensemble.hpp"
#include "fissile/subset.hpp"

namespace fissile {

/// x_gen^exp with exp = ±1. Generators are 0-based; text uses x1, x2, ...
struct Letter {
  int gen = 0;
  int exp = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using FreeWord = std::vector<Letter>;

FreeWord reduce(const FreeWord& w);
FreeWord concat(const FreeWord& a, const FreeWord& b);
FreeWord inverse(const FreeWord& w);
/// [u, v] = u v u⁻¹ v⁻¹, reduced.
FreeWord commutator(const FreeWord& u, const FreeWord& v);
FreeWord generator_word(int gen);

/// Erases generators outside J, then reduces.
FreeWord delete_outside(Subset j, const FreeWord& w);
/// delete_outside(J, w) is trivial for every proper J ⊂ I.
bool is_brunnian(const FreeWord& w, Subset ground);

/// A binary bracketing tree; a leaf has no children.
struct Nesting {
  std::vector<Nesting> children;  // empty or exactly two

  bool leaf() const noexcept { return children.empty(); }
  int weight() const;
  static Nesting node(Nesting left, Nesting right);
};

/// Every nesting of weight s, in a fixed order.
std::vector<Nesting> all_nestings(int s);
/// ((•,•),•)... of weight s.
Nesting left_comb(int s);
std::string to_string(const Nesting& t);

/// Throws std::invalid_argument on arity mismatch.
FreeWord nested_commutator(const Nesting& t, const std::vector<FreeWord>& words);

/// Truncated noncommutative power series over X_i: monomial -> coefficient.
struct MagnusSeries {
  int degree = 0;
  std::map<std::vector<int>, Integer> terms;

  static MagnusSeries one(int degree);
  friend bool operator==(const MagnusSeries&, const MagnusSeries&) = default;
};

MagnusSeries multiply(const MagnusSeries& a, const MagnusSeries& b);
/// x_i ↦ 1 + X_i, x_i⁻¹ ↦ Σ_k (−X_i)^k, truncated at D.
MagnusSeries magnus(const FreeWord& w, int degree);
/// X_i ↦ 0.
MagnusSeries substitute_zero(const MagnusSeries& s, int gen);
/// Least degree of a nonzero nonconstant term; nullopt means ≥ D+1.
std::optional<int> lcs_degree(const FreeWord& w, int max_degree);

class WordParseError : public std::invalid_argument {
 public:
  WordParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Whitespace-separated tokens xN or xN^-1 (N ≥ 1). The position is the byte
/// offset of the offending token.
FreeWord parse_word(std::string_view text);
std::string format_word(const FreeWord& w);
/// One monomial per entry, e.g. {"monomial": "X1 X2", "coeff": "-1"}.
nlohmann::json series_to_json(const MagnusSeries& s);

}  // namespace fissile
