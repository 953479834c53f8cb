#include "fissile/ensemble.hpp"

namespace fissile {

Ensemble Ensemble::singleton(Key key) {
  Ensemble s;
  s.terms_.emplace(std::move(key), 1);
  return s;
}

void Ensemble::add(const Key& key, const Integer& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, coefficient);
  if (inserted) return;
  it->second += coefficient;
  if (it->second.is_zero()) terms_.erase(it);
}

Integer Ensemble::coefficient(const Key& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Integer(0) : it->second;
}

Ensemble& Ensemble::operator+=(const Ensemble& other) {
  for (const auto& [key, c] : other.terms_) add(key, c);
  return *this;
}

Ensemble& Ensemble::operator-=(const Ensemble& other) {
  for (const auto& [key, c] : other.terms_) add(key, -c);
  return *this;
}

Ensemble& Ensemble::operator*=(const Integer& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c *= scalar;
  return *this;
}

Ensemble Ensemble::operator-() const {
  Ensemble out = *this;
  for (auto& [key, c] : out.terms_) c = -c;
  return out;
}

Integer augmentation(const Ensemble& s) {
  Integer total = 0;
  for (const auto& [key, c] : s.terms()) total += c;
  return total;
}

Ensemble map_ensemble(const Ensemble& s, const std::map<Key, Key>& f) {
  return map_ensemble(s, [&](const Key& key) -> const Key& {
    auto it = f.find(key);
    if (it == f.end()) throw DomainError("function undefined on support key " + to_base64(key));
    return it->second;
  });
}

Ensemble tuple_product(std::span<const Ensemble> factors) {
  return combining_product(factors, [](std::span<const Key> keys) { return encode_tuple(keys); });
}

std::string to_string(const Integer& c) { return c.str(); }

Integer integer_from_string(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("bad integer literal: " + text);
  for (std::size_t k = start; k < text.size(); ++k) {
    if (text[k] < '0' || text[k] > '9') throw std::invalid_argument("bad integer literal: " + text);
  }
  return Integer(text);
}

nlohmann::json to_json(const Ensemble& s) {
  // std::map already iterates in lexicographic key order.
  auto out = nlohmann::json::array();
  for (const auto& [key, c] : s.terms()) {
    out.push_back({{"key", to_base64(key)}, {"coeff", to_string(c)}});
  }
  return out;
}

Ensemble ensemble_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("ensemble JSON must be an array");
  Ensemble s;
  for (const auto& term : j) {
    s.add(from_base64(term.at("key").get<std::string>()),
          integer_from_string(term.at("coeff").get<std::string>()));
  }
  return s;
}

}  // namespace fissile
