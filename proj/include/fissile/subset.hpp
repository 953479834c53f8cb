#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "fissile/key.hpp"

namespace fissile {

/// A subset of a small ground set {0, ..., n-1} as a bitmask. Elements are
/// shown 1-based in JSON and text.
using Subset = std::uint32_t;

/// Raised when an input exceeds a configured size guard.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline int popcount(Subset s) noexcept { return std::popcount(s); }
inline bool is_subset(Subset a, Subset b) noexcept { return (a & ~b) == 0; }
inline Subset full_set(int n) { return n >= 32 ? ~Subset{0} : (Subset{1} << n) - 1; }
inline int lowest_element(Subset s) { return std::countr_zero(s); }

std::vector<int> elements(Subset s);
Subset subset_of(const std::vector<int>& elems);

/// All subsets of `s` in increasing mask order.
std::vector<Subset> subsets_of(Subset s);

/// Lexicographic comparison of the sorted element lists.
bool lex_less(Subset a, Subset b);

Key subset_key(Subset s);
Subset subset_from_key(const Key& key);

nlohmann::json subset_to_json(Subset s);
Subset subset_from_json(const nlohmann::json& j);
std::string subset_to_string(Subset s);

/// Reads a size guard from the environment, falling back to `fallback`.
long env_guard(const char* name, long fallback);

}  // namespace fissile
