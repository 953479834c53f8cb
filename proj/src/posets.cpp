#include "fissile/posets.hpp"

#include <algorithm>
#include <map>

namespace fissile {

FinitePoset::FinitePoset(std::vector<Key> elements, const std::function<bool(int, int)>& leq)
    : keys_(std::move(elements)) {
  const int n = size();
  {
    std::vector<Key> sorted = keys_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw PosetError("duplicate poset element");
  }
  leq_.assign(n, std::vector<char>(n, 0));
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) leq_[p][q] = leq(p, q);
  }
  for (int p = 0; p < n; ++p) {
    if (!leq_[p][p]) throw PosetError("order is not reflexive");
    for (int q = 0; q < n; ++q) {
      if (p != q && leq_[p][q] && leq_[q][p]) throw PosetError("order is not antisymmetric");
      for (int r = 0; r < n; ++r) {
        if (leq_[p][q] && leq_[q][r] && !leq_[p][r]) throw PosetError("order is not transitive");
      }
    }
  }
  // Sort by the number of elements below, which is a linear extension.
  std::vector<int> below(n, 0);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) below[p] += leq_[q][p];
  }
  order_.resize(n);
  for (int p = 0; p < n; ++p) order_[p] = p;
  std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return below[a] < below[b]; });
}

int FinitePoset::index_of(const Key& key) const {
  auto it = std::find(keys_.begin(), keys_.end(), key);
  if (it == keys_.end()) throw PosetError("element not in the poset");
  return static_cast<int>(it - keys_.begin());
}

std::vector<int> FinitePoset::down_set(int p) const {
  if (p < 0 || p >= size()) throw PosetError("down_set: element not in the poset");
  std::vector<int> out;
  for (int q = 0; q < size(); ++q) {
    if (leq(q, p)) out.push_back(q);
  }
  return out;
}

std::vector<std::pair<int, int>> FinitePoset::covers() const {
  std::vector<std::pair<int, int>> out;
  for (int q = 0; q < size(); ++q) {
    for (int p = 0; p < size(); ++p) {
      if (p == q || !leq(q, p)) continue;
      bool between = false;
      for (int r = 0; r < size() && !between; ++r) between = r != p && r != q && leq(q, r) && leq(r, p);
      if (!between) out.emplace_back(q, p);
    }
  }
  return out;
}

std::optional<int> FinitePoset::top() const {
  for (int p = 0; p < size(); ++p) {
    bool all = true;
    for (int q = 0; q < size() && all; ++q) all = leq(q, p);
    if (all) return p;
  }
  return std::nullopt;
}

std::optional<int> FinitePoset::meet(int p, int q) const {
  std::optional<int> best;
  for (int r = 0; r < size(); ++r) {
    if (!leq(r, p) || !leq(r, q)) continue;
    if (!best || leq(*best, r)) best = r;
  }
  if (!best) return std::nullopt;
  for (int r = 0; r < size(); ++r) {
    if (leq(r, p) && leq(r, q) && !leq(r, *best)) return std::nullopt;
  }
  return best;
}

std::vector<int> sorted_by_extension(const FinitePoset& poset, std::vector<int> within) {
  std::vector<int> rank(poset.size());
  const auto& order = poset.linear_extension();
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
  std::sort(within.begin(), within.end(), [&](int a, int b) { return rank[a] < rank[b]; });
  return within;
}

nlohmann::json poset_to_json(const FinitePoset& p) {
  nlohmann::json j;
  j["elements"] = nlohmann::json::array();
  for (int i = 0; i < p.size(); ++i) j["elements"].push_back(to_base64(p.element(i)));
  j["covers"] = nlohmann::json::array();
  for (const auto& [lo, hi] : p.covers()) j["covers"].push_back({lo, hi});
  return j;
}

FinitePoset poset_from_json(const nlohmann::json& j) {
  std::vector<Key> keys;
  for (const auto& e : j.at("elements")) keys.push_back(from_base64(e.get<std::string>()));
  const int n = static_cast<int>(keys.size());
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int p = 0; p < n; ++p) reach[p][p] = 1;
  for (const auto& c : j.at("covers")) {
    const int lo = c.at(0).get<int>();
    const int hi = c.at(1).get<int>();
    if (lo < 0 || hi < 0 || lo >= n || hi >= n) throw PosetError("cover relation out of range");
    reach[lo][hi] = 1;
  }
  for (int k = 0; k < n; ++k) {
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        if (reach[p][k] && reach[k][q]) reach[p][q] = 1;
      }
    }
  }
  return FinitePoset(std::move(keys), [&](int p, int q) { return reach[p][q] != 0; });
}

}  // namespace fissile
