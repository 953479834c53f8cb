#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "fissile/ensemble.hpp"

namespace fissile {

class PosetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite poset on elements 0..size()-1, each carrying a canonical key.
/// The order axioms are checked exhaustively on construction.
class FinitePoset {
 public:
  FinitePoset(std::vector<Key> elements, const std::function<bool(int, int)>& leq);

  int size() const noexcept { return static_cast<int>(keys_.size()); }
  const Key& element(int p) const { return keys_.at(static_cast<std::size_t>(p)); }
  int index_of(const Key& key) const;
  bool leq(int p, int q) const { return leq_[p][q] != 0; }

  /// P[p] = {q | q ≤ p}, increasing by index.
  std::vector<int> down_set(int p) const;
  /// A fixed linear extension: each element after everything below it.
  const std::vector<int>& linear_extension() const noexcept { return order_; }
  /// Pairs (q, p) with q < p and nothing strictly between.
  std::vector<std::pair<int, int>> covers() const;
  std::optional<int> top() const;
  /// Greatest lower bound, if it exists.
  std::optional<int> meet(int p, int q) const;

 private:
  std::vector<Key> keys_;
  std::vector<std::vector<char>> leq_;
  std::vector<int> order_;
};

/// {elements: [base64 keys], covers: [[lower, upper], ...]}.
nlohmann::json poset_to_json(const FinitePoset& p);
FinitePoset poset_from_json(const nlohmann::json& j);

/// Elements of `within` in an order compatible with the poset.
std::vector<int> sorted_by_extension(const FinitePoset& poset, std::vector<int> within);

inline const Ensemble& ensemble_of(const Ensemble& e) { return e; }
inline bool is_zero_value(const Ensemble& e) { return e.is_zero(); }

// The functions below work with any value type V forming an abelian group
// (default-constructed zero, +=, -=) for which ensemble_of(V) is defined.
// A family over a subposet is indexed by position in the `within` list;
// restrict(p, q, v) implements v|_q for q ≤ p and extend(p, q, v) λ_p^q.

/// ∇: in_p(u) ↦ Σ_{q ∈ P[p]} in_q(u|_q), over the subposet `within`.
template <class V, class Restrict>
std::vector<V> nabla(const FinitePoset& poset, const std::vector<int>& within, const std::vector<V>& family,
                     Restrict&& restrict) {
  if (family.size() != within.size()) throw PosetError("nabla: family size does not match the subposet");
  std::vector<V> out(within.size());
  for (std::size_t a = 0; a < within.size(); ++a) {
    if (is_zero_value(family[a])) continue;
    for (std::size_t b = 0; b < within.size(); ++b) {
      if (poset.leq(within[b], within[a])) out[b] += a == b ? family[a] : restrict(within[a], within[b], family[a]);
    }
  }
  return out;
}

/// ∇⁻¹ by back-substitution from the top of a linear extension:
/// v_q = u_q − Σ_{p > q} v_p|_q.
template <class V, class Restrict>
std::vector<V> nabla_inverse(const FinitePoset& poset, const std::vector<int>& within, const std::vector<V>& family,
                             Restrict&& restrict) {
  if (family.size() != within.size()) throw PosetError("nabla_inverse: family size does not match the subposet");
  std::vector<std::size_t> order(within.size());
  {
    const auto sorted = sorted_by_extension(poset, within);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      for (std::size_t a = 0; a < within.size(); ++a) {
        if (within[a] == sorted[i]) order[i] = a;
      }
    }
  }
  std::vector<V> v(within.size());
  for (std::size_t t = order.size(); t-- > 0;) {
    const std::size_t q = order[t];
    V value = family[q];
    for (std::size_t s = t + 1; s < order.size(); ++s) {
      const std::size_t p = order[s];
      if (!poset.leq(within[q], within[p]) || is_zero_value(v[p])) continue;
      value -= restrict(within[p], within[q], v[p]);
    }
    v[q] = std::move(value);
  }
  return v;
}

/// Σ_p λ_target^p(v_p).
template <class V, class Extend>
V extend_sum(int target, const std::vector<int>& within, const std::vector<V>& family, Extend&& extend) {
  V out{};
  for (std::size_t a = 0; a < within.size(); ++a) {
    if (is_zero_value(family[a])) continue;
    out += within[a] == target ? family[a] : extend(target, within[a], family[a]);
  }
  return out;
}

/// Empty when (u_p) is compatible: u_p|_q = u_q for q ≤ p in `within`.
template <class V, class Restrict>
std::string compatibility_failure(const FinitePoset& poset, const std::vector<int>& within,
                                  const std::vector<V>& family, Restrict&& restrict) {
  for (std::size_t a = 0; a < within.size(); ++a) {
    for (std::size_t b = 0; b < within.size(); ++b) {
      if (a == b || !poset.leq(within[b], within[a])) continue;
      if (ensemble_of(restrict(within[a], within[b], family[a])) != ensemble_of(family[b])) {
        return "family is not compatible between positions " + std::to_string(a) + " and " + std::to_string(b);
      }
    }
  }
  return {};
}

/// The limit lift: given a compatible family over P^× = P ∖ {⊤}, returns u
/// in U(⊤) with u|_q = u_q, as v = ∇⁻¹(u) over P^× and u = Σ_p λ_⊤^p(v_p).
/// Throws PosetError on an incompatible family.
template <class V, class Restrict, class Extend>
V lift_limit(const FinitePoset& poset, const std::vector<int>& proper, const std::vector<V>& family,
             Restrict&& restrict, Extend&& extend) {
  const auto top = poset.top();
  if (!top) throw PosetError("lift_limit: the poset has no greatest element");
  for (int p : proper) {
    if (p == *top) throw PosetError("lift_limit: the family must avoid the top element");
  }
  if (auto why = compatibility_failure(poset, proper, family, restrict); !why.empty()) {
    throw PosetError("lift_limit: " + why);
  }
  const auto v = nabla_inverse(poset, proper, family, restrict);
  return extend_sum(*top, proper, v, extend);
}

/// Presheaf of ensemble groups over a poset: element-level restrictions
/// lifted by map_ensemble.
struct EnsemblePresheaf {
  std::function<Key(int from, int to, const Key& element)> restrict_element;

  Ensemble restrict(int from, int to, const Ensemble& s) const {
    if (from == to) return s;
    return map_ensemble(s, [&](const Key& k) { return restrict_element(from, to, k); });
  }
};

/// Extender given on elements: λ_p^q for p ≥ q.
struct EnsembleExtender {
  std::function<Key(int p, int q, const Key& element)> extend_element;

  Ensemble extend(int p, int q, const Ensemble& s) const {
    if (p == q) return s;
    return map_ensemble(s, [&](const Key& k) { return extend_element(p, q, k); });
  }
};

/// Checks ?|_q ∘ (⊕ λ_⊤^p) ∘ ∇⁻¹ = (⊕ λ_q^p) ∘ ∇_{P[q]}⁻¹ ∘ pr at every q for
/// one family over the whole poset. Returns a diagnostic or empty.
template <class V, class Restrict, class Extend>
std::string extender_diagram_failure(const FinitePoset& poset, const std::vector<V>& family, Restrict&& restrict,
                                     Extend&& extend) {
  const auto top = poset.top();
  if (!top) return "poset has no greatest element";
  std::vector<int> all(poset.size());
  for (int p = 0; p < poset.size(); ++p) all[p] = p;
  const auto v = nabla_inverse(poset, all, family, restrict);
  const V total = extend_sum(*top, all, v, extend);
  for (int q = 0; q < poset.size(); ++q) {
    const auto down = poset.down_set(q);
    std::vector<V> projected;
    for (int p : down) projected.push_back(family[p]);
    const auto vq = nabla_inverse(poset, down, projected, restrict);
    const V right = extend_sum(q, down, vq, extend);
    const V left = q == *top ? total : restrict(*top, q, total);
    if (ensemble_of(left) != ensemble_of(right)) return "diagram fails at element " + std::to_string(q);
  }
  return {};
}

}  // namespace fissile
