#pragma once

#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include "json.hpp"

#include "fissile/key.hpp"

namespace fissile {

using Integer = boost::multiprecision::cpp_int;

/// Raised when a function pushed through an ensemble is undefined on some
/// support element.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An element of the free abelian group on a universe of canonically keyed
/// elements: a finite formal integer combination. No stored coefficient is
/// ever zero.
class Ensemble {
 public:
  using Terms = std::map<Key, Integer>;

  Ensemble() = default;

  static Ensemble singleton(Key key);

  /// Adds `coefficient` to the term at `key`, dropping it if it cancels.
  void add(const Key& key, const Integer& coefficient);

  Integer coefficient(const Key& key) const;
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Ensemble& operator+=(const Ensemble& other);
  Ensemble& operator-=(const Ensemble& other);
  Ensemble& operator*=(const Integer& scalar);
  Ensemble operator-() const;

  friend Ensemble operator+(Ensemble a, const Ensemble& b) { return a += b; }
  friend Ensemble operator-(Ensemble a, const Ensemble& b) { return a -= b; }
  friend Ensemble operator*(const Integer& c, Ensemble a) { return a *= c; }
  friend bool operator==(const Ensemble&, const Ensemble&) = default;

 private:
  Terms terms_;
};

/// Sum of coefficients.
Integer augmentation(const Ensemble& s);

/// Linear pushforward along an element-level function. Colliding images sum.
template <class F>
Ensemble map_ensemble(const Ensemble& s, F&& f) {
  Ensemble out;
  for (const auto& [key, c] : s.terms()) out.add(f(key), c);
  return out;
}

/// Pushforward along a finite function; throws DomainError off its domain.
Ensemble map_ensemble(const Ensemble& s, const std::map<Key, Key>& f);

/// Multilinear extension of `combiner` over the factors. The empty product is
/// the singleton of combiner({}).
template <class Combiner>
Ensemble combining_product(std::span<const Ensemble> factors, Combiner&& combiner) {
  Ensemble out;
  std::vector<Ensemble::Terms::const_iterator> at(factors.size());
  for (std::size_t j = 0; j < factors.size(); ++j) {
    if (factors[j].is_zero()) return out;
    at[j] = factors[j].terms().begin();
  }
  std::vector<Key> keys(factors.size());
  while (true) {
    Integer c = 1;
    for (std::size_t j = 0; j < factors.size(); ++j) {
      keys[j] = at[j]->first;
      c *= at[j]->second;
    }
    out.add(combiner(std::span<const Key>(keys)), c);
    std::size_t j = 0;
    for (; j < factors.size(); ++j) {
      if (++at[j] != factors[j].terms().end()) break;
      at[j] = factors[j].terms().begin();
    }
    if (j == factors.size()) break;
  }
  return out;
}

/// Combining product with tuple keys as combined elements.
Ensemble tuple_product(std::span<const Ensemble> factors);

/// Sorted array of {key: base64, coeff: decimal string}.
nlohmann::json to_json(const Ensemble& s);
Ensemble ensemble_from_json(const nlohmann::json& j);

std::string to_string(const Integer& c);
Integer integer_from_string(const std::string& text);

}  // namespace fissile
