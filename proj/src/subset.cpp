#include "fissile/subset.hpp"

#include <algorithm>
#include <cstdlib>

namespace fissile {

std::vector<int> elements(Subset s) {
  std::vector<int> out;
  while (s != 0) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

Subset subset_of(const std::vector<int>& elems) {
  Subset s = 0;
  for (int e : elems) {
    if (e < 0 || e >= 32) throw std::out_of_range("subset element out of range");
    s |= Subset{1} << e;
  }
  return s;
}

std::vector<Subset> subsets_of(Subset s) {
  std::vector<Subset> out;
  Subset t = 0;
  do {
    out.push_back(t);
    t = (t - s) & s;
  } while (t != 0);
  std::sort(out.begin(), out.end());
  return out;
}

bool lex_less(Subset a, Subset b) {
  const auto ea = elements(a);
  const auto eb = elements(b);
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

Key subset_key(Subset s) {
  KeyWriter w;
  w.u32(s);
  return std::move(w).finish();
}

Subset subset_from_key(const Key& key) {
  KeyReader r(key);
  const auto s = r.u32();
  r.expect_done();
  return s;
}

nlohmann::json subset_to_json(Subset s) {
  auto out = nlohmann::json::array();
  for (int e : elements(s)) out.push_back(e + 1);
  return out;
}

Subset subset_from_json(const nlohmann::json& j) {
  Subset s = 0;
  for (const auto& e : j) {
    const int v = e.get<int>();
    if (v < 1 || v > 32) throw std::invalid_argument("subset element out of range");
    s |= Subset{1} << (v - 1);
  }
  return s;
}

std::string subset_to_string(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int e : elements(s)) {
    if (!first) out += ",";
    out += std::to_string(e + 1);
    first = false;
  }
  return out + "}";
}

long env_guard(const char* name, long fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 0) return fallback;
  return v;
}

}  // namespace fissile
