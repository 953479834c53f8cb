#include "fissile/subgroup.hpp"


namespace fissile {

namespace {

using Sparse = std::map<int, Integer>;

void axpy(Sparse& y, const Integer& a, const Sparse& x) {
  if (a == 0) return;
  for (const auto& [k, v] : x) {
    auto it = y.find(k);
    if (it == y.end()) {
      y.emplace(k, a * v);
    } else {
      it->second += a * v;
      if (it->second == 0) y.erase(it);
    }
  }
}

Sparse scaled(const Sparse& x, const Integer& a) {
  Sparse out;
  axpy(out, a, x);
  return out;
}

// x*a + y*b = g = gcd(a, b) > 0.
Integer extended_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
  Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const Integer q = r0 / r1;
    Integer tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  x = s0;
  y = t0;
  return r0;
}

}  // namespace

SubgroupLattice::SubgroupLattice(const std::vector<Ensemble>& generators) {
  for (const auto& g : generators) add(g);
}

SubgroupLattice::Sparse SubgroupLattice::to_columns(const Ensemble& v, bool extend) {
  Sparse out;
  for (const auto& [key, c] : v.terms()) {
    auto it = columns_.find(key);
    if (it == columns_.end()) {
      if (!extend) continue;
      it = columns_.emplace(key, static_cast<int>(columns_.size())).first;
    }
    out.emplace(it->second, c);
  }
  return out;
}

void SubgroupLattice::add(const Ensemble& generator) {
  const int index = static_cast<int>(generators_.size());
  generators_.push_back(generator);
  Row vec{to_columns(generator, true), Sparse{{index, 1}}};
  while (!vec.entries.empty()) {
    const int pivot = vec.entries.begin()->first;
    auto it = rows_.find(pivot);
    if (it == rows_.end()) {
      if (vec.entries.begin()->second < 0) {
        vec.entries = scaled(vec.entries, -1);
        vec.transform = scaled(vec.transform, -1);
      }
      rows_.emplace(pivot, std::move(vec));
      return;
    }
    Row& row = it->second;
    const Integer a = row.entries.begin()->second;
    const Integer b = vec.entries.begin()->second;
    if (b % a == 0) {
      const Integer q = b / a;
      axpy(vec.entries, -q, row.entries);
      axpy(vec.transform, -q, row.transform);
      continue;
    }
    Integer x, y;
    const Integer g = extended_gcd(a, b, x, y);
    Row merged{scaled(row.entries, x), scaled(row.transform, x)};
    axpy(merged.entries, y, vec.entries);
    axpy(merged.transform, y, vec.transform);
    Row rest{scaled(vec.entries, a / g), scaled(vec.transform, a / g)};
    axpy(rest.entries, -(b / g), row.entries);
    axpy(rest.transform, -(b / g), row.transform);
    row = std::move(merged);
    vec = std::move(rest);
  }
}

Membership SubgroupLattice::decide(const Ensemble& v) const {
  Membership out;
  Sparse vec;
  for (const auto& [key, c] : v.terms()) {
    auto it = columns_.find(key);
    if (it == columns_.end()) {
      out.reason = "coordinate outside every generator support";
      return out;
    }
    vec.emplace(it->second, c);
  }
  Sparse combination;
  while (!vec.empty()) {
    const auto [pivot, lead] = *vec.begin();
    auto it = rows_.find(pivot);
    if (it == rows_.end()) {
      out.reason = "no basis row at a leading coordinate";
      return out;
    }
    const Integer a = it->second.entries.begin()->second;
    if (lead % a != 0) {
      out.reason = "leading coefficient not divisible by the pivot";
      return out;
    }
    const Integer q = lead / a;
    axpy(vec, -q, it->second.entries);
    axpy(combination, q, it->second.transform);
  }
  out.coefficients.assign(generators_.size(), 0);
  for (const auto& [i, c] : combination) out.coefficients[i] = c;
  if (linear_combination(generators_, out.coefficients) != v) {
    out.coefficients.clear();
    out.reason = "certificate failed re-evaluation";
    return out;
  }
  out.member = true;
  return out;
}

Membership subgroup_membership(const Ensemble& v, const std::vector<Ensemble>& generators) {
  return SubgroupLattice(generators).decide(v);
}

Ensemble linear_combination(const std::vector<Ensemble>& generators, const std::vector<Integer>& coefficients) {
  if (generators.size() != coefficients.size()) throw DomainError("linear_combination: arity mismatch");
  Ensemble out;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (coefficients[i] != 0) out += coefficients[i] * generators[i];
  }
  return out;
}

}  // namespace fissile
