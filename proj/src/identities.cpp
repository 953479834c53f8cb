#include "fissile/identities.hpp"

#include <algorithm>
#include <set>

namespace fissile {

namespace {

int sign(int exponent) { return exponent % 2 ? -1 : 1; }

Ensemble alternating_subsets(Subset k) {
  Ensemble out;
  for (Subset j : subsets_of(k)) out.add(subset_key(j), sign(popcount(k) - popcount(j)));
  return out;
}

// Σ_{J ≠ I} (−1)^{|I|−1−|J|} ⟨J⟩.
Ensemble proper_alternating(Subset ground) {
  Ensemble out;
  for (Subset j : subsets_of(ground)) {
    if (j != ground) out.add(subset_key(j), sign(popcount(ground) - 1 - popcount(j)));
  }
  return out;
}

std::vector<SubsetFunction> functions_over(int a, const std::vector<Subset>& values) {
  long total = 1;
  const long cap = env_guard("FISSILE_MAX_IDENTITY_FUNCTIONS", 1L << 20);
  for (int i = 0; i < a; ++i) {
    total *= static_cast<long>(values.size());
    if (total > cap) throw GuardExceeded("subset_functions: more than " + std::to_string(cap) + " functions");
  }
  std::vector<SubsetFunction> out;
  if (values.empty() && a > 0) return out;
  std::vector<std::size_t> digit(a, 0);
  while (true) {
    SubsetFunction k(a);
    for (int i = 0; i < a; ++i) k[i] = values[digit[i]];
    out.push_back(std::move(k));
    int i = 0;
    for (; i < a; ++i) {
      if (++digit[i] < values.size()) break;
      digit[i] = 0;
    }
    if (i == a) break;
  }
  return out;
}

std::vector<Subset> proper_subsets(Subset ground) {
  auto all = subsets_of(ground);
  all.pop_back();
  return all;
}

Ensemble sum_terms(const std::vector<SubsetFunction>& ks) {
  Ensemble out;
  for (const auto& k : ks) out += cover_term(k);
  return out;
}

}  // namespace

std::vector<SubsetFunction> subset_functions(int a, Subset ground) { return functions_over(a, subsets_of(ground)); }

std::vector<SubsetFunction> proper_subset_functions(int a, Subset ground) {
  return functions_over(a, proper_subsets(ground));
}

Subset union_of(const SubsetFunction& k) {
  Subset u = 0;
  for (Subset s : k) u |= s;
  return u;
}

std::vector<SubsetFunction> covers(int a, Subset ground) {
  auto all = subset_functions(a, ground);
  std::erase_if(all, [&](const SubsetFunction& k) { return union_of(k) != ground; });
  return all;
}

std::vector<SubsetFunction> proper_covers(int a, Subset ground) {
  auto all = proper_subset_functions(a, ground);
  std::erase_if(all, [&](const SubsetFunction& k) { return union_of(k) != ground; });
  return all;
}

Ensemble tensor(const std::vector<Ensemble>& factors) { return tuple_product(factors); }

Ensemble tensor_power(const Ensemble& x, int a) { return tensor(std::vector<Ensemble>(a, x)); }

Ensemble cover_term(const SubsetFunction& k) {
  std::vector<Ensemble> factors;
  for (Subset s : k) factors.push_back(alternating_subsets(s));
  return tensor(factors);
}

bool verify_cover_identity(int a, Subset ground) {
  Ensemble left;
  for (Subset j : subsets_of(ground)) {
    left += Integer(sign(popcount(ground) - popcount(j))) * tensor_power(Ensemble::singleton(subset_key(j)), a);
  }
  return left == sum_terms(covers(a, ground));
}

bool verify_proper_cover_identity(int a, Subset ground) {
  Ensemble left = tensor_power(proper_alternating(ground), a);
  for (Subset j : proper_subsets(ground)) {
    left -= Integer(sign(popcount(ground) - 1 - popcount(j))) * tensor_power(Ensemble::singleton(subset_key(j)), a);
  }
  return left == sum_terms(proper_covers(a, ground));
}

bool verify_total_term_sum(int a, Subset ground) {
  return sum_terms(subset_functions(a, ground)) == tensor_power(Ensemble::singleton(subset_key(ground)), a);
}

bool verify_proper_term_sum(int a, Subset ground) {
  return sum_terms(proper_subset_functions(a, ground)) == tensor_power(proper_alternating(ground), a);
}

bool verify_cover_difference(int a, Subset ground) {
  const auto r = covers(a, ground);
  const auto rp = proper_covers(a, ground);
  const auto all = subset_functions(a, ground);
  const auto proper = proper_subset_functions(a, ground);
  const std::set<SubsetFunction> r_set(r.begin(), r.end());
  const std::set<SubsetFunction> rp_set(rp.begin(), rp.end());
  const std::set<SubsetFunction> all_set(all.begin(), all.end());
  const std::set<SubsetFunction> proper_set(proper.begin(), proper.end());
  const auto contains_all = [](const auto& big, const auto& small) {
    return std::all_of(small.begin(), small.end(), [&](const auto& k) { return big.contains(k); });
  };
  if (!contains_all(r_set, rp_set) || !contains_all(all_set, proper_set)) return false;
  std::set<SubsetFunction> left, right;
  for (const auto& k : r_set) {
    if (!rp_set.contains(k)) left.insert(k);
  }
  for (const auto& k : all_set) {
    if (!proper_set.contains(k)) right.insert(k);
  }
  return left == right;
}

}  // namespace fissile
