#include "fissile/simplicial/constructions.hpp"

#include <algorithm>
#include <map>

namespace fissile {

namespace {

struct Tables {
  std::vector<int> counts;
  std::vector<std::vector<int>> faces;
  std::vector<std::vector<int>> degeneracies;

  explicit Tables(int bound) : counts(bound + 1, 0), faces(bound + 1), degeneracies(bound + 1) {}
};

SetPtr finish(Tables&& t, int bound, std::optional<int> basepoint) {
  return make_set(bound, std::move(t.counts), std::move(t.faces), std::move(t.degeneracies), basepoint);
}

}  // namespace

SetPtr point_set(int bound) {
  Tables t(bound);
  for (int n = 0; n <= bound; ++n) {
    t.counts[n] = 1;
    if (n >= 1) t.faces[n].assign(n + 1, 0);
    if (n < bound) t.degeneracies[n].assign(n + 1, 0);
  }
  return finish(std::move(t), bound, 0);
}

SetPtr empty_set(int bound) { return finish(Tables(bound), bound, std::nullopt); }

Nerve make_nerve(int elements, const std::function<bool(int, int)>& leq, int bound) {
  Nerve out;
  out.chains.resize(bound + 1);
  std::vector<std::map<std::vector<int>, int>> lookup(bound + 1);
  for (int e = 0; e < elements; ++e) {
    lookup[0].emplace(std::vector<int>{e}, e);
    out.chains[0].push_back({e});
  }
  for (int n = 1; n <= bound; ++n) {
    for (const auto& c : out.chains[n - 1]) {
      for (int e = 0; e < elements; ++e) {
        if (!leq(c.back(), e)) continue;
        auto next = c;
        next.push_back(e);
        lookup[n].emplace(next, static_cast<int>(out.chains[n].size()));
        out.chains[n].push_back(std::move(next));
      }
    }
  }
  Tables t(bound);
  for (int n = 0; n <= bound; ++n) {
    t.counts[n] = static_cast<int>(out.chains[n].size());
    for (const auto& c : out.chains[n]) {
      if (n >= 1) {
        for (int i = 0; i <= n; ++i) {
          auto f = c;
          f.erase(f.begin() + i);
          t.faces[n].push_back(lookup[n - 1].at(f));
        }
      }
      if (n < bound) {
        for (int i = 0; i <= n; ++i) {
          auto s = c;
          s.insert(s.begin() + i, c[i]);
          t.degeneracies[n].push_back(lookup[n + 1].at(s));
        }
      }
    }
  }
  out.set = finish(std::move(t), bound, std::nullopt);
  return out;
}

SetPtr interval_set(int bound) {
  return make_nerve(2, [](int a, int b) { return a <= b; }, bound).set;
}

Cone make_cone(const SetPtr& base, int side) { return make_cone(base, side, base->bound()); }

Cone make_cone(const SetPtr& base, int side, int bound) {
  if (side != 0 && side != 1) throw SimplicialError("cone side must be 0 or 1");
  if (bound > base->bound()) throw SimplicialError("cone bound exceeds the bound of its base");
  Cone c;
  c.base = base;
  c.side = side;
  c.offset.resize(bound + 1);
  c.base_count.resize(bound + 1);
  c.base_part.resize(bound + 1);
  Tables t(bound);
  for (int n = 0; n <= bound; ++n) {
    c.offset[n].assign(n + 2, 0);
    int running = 1;
    c.base_count[n].push_back(0);
    c.base_part[n].push_back(-1);
    for (int k = 1; k <= n + 1; ++k) {
      c.offset[n][k] = running;
      const int size = base->count(k - 1);
      for (int y = 0; y < size; ++y) {
        c.base_count[n].push_back(k);
        c.base_part[n].push_back(y);
      }
      running += size;
    }
    t.counts[n] = running;
  }
  for (int n = 0; n <= bound; ++n) {
    for (int x = 0; x < t.counts[n]; ++x) {
      const int k = c.base_count[n][x];
      const int y = c.base_part[n][x];
      const int apexes = n + 1 - k;
      // Position of the first base vertex.
      const int first_base = side == 0 ? apexes : 0;
      const auto is_base = [&](int i) { return side == 0 ? i >= apexes : i < k; };
      if (n >= 1) {
        for (int i = 0; i <= n; ++i) {
          if (!is_base(i)) {
            t.faces[n].push_back(c.index(n - 1, k, y));
          } else if (k == 1) {
            t.faces[n].push_back(0);
          } else {
            t.faces[n].push_back(c.index(n - 1, k - 1, base->face(k - 1, y, i - first_base)));
          }
        }
      }
      if (n < bound) {
        for (int i = 0; i <= n; ++i) {
          if (!is_base(i)) {
            t.degeneracies[n].push_back(c.index(n + 1, k, y));
          } else {
            t.degeneracies[n].push_back(c.index(n + 1, k + 1, base->degeneracy(k - 1, y, i - first_base)));
          }
        }
      }
    }
  }
  c.set = finish(std::move(t), bound, 0);
  return c;
}

Morphism Cone::inclusion() const {
  if (base->bound() != set->bound()) throw SimplicialError("cone inclusion needs equal bounds");
  Morphism m{base, set, {}};
  m.map.resize(set->bound() + 1);
  for (int n = 0; n <= set->bound(); ++n) {
    m.map[n].resize(base->count(n));
    for (int y = 0; y < base->count(n); ++y) m.map[n][y] = index(n, n + 1, y);
  }
  return m;
}

Morphism Cone::projection(const SetPtr& interval) const {
  Morphism m{set, interval, {}};
  m.map.resize(set->bound() + 1);
  for (int n = 0; n <= set->bound(); ++n) {
    m.map[n].resize(set->count(n));
    for (int x = 0; x < set->count(n); ++x) {
      const int k = base_count[n][x];
      std::vector<int> seq;
      for (int i = 0; i <= n; ++i) {
        const bool on_base = side == 0 ? i >= n + 1 - k : i < k;
        // Č puts the base over vertex 1, Ĉ over vertex 0.
        seq.push_back(on_base ? (side == 0 ? 1 : 0) : (side == 0 ? 0 : 1));
      }
      m.map[n][x] = interval->find_by_vertices(seq).value();
    }
  }
  return m;
}

Morphism cone_map(const Cone& a, const Cone& b, const Morphism& f) {
  Morphism m{a.set, b.set, {}};
  m.map.resize(a.set->bound() + 1);
  for (int n = 0; n <= a.set->bound(); ++n) {
    m.map[n].resize(a.set->count(n));
    for (int x = 0; x < a.set->count(n); ++x) {
      const auto [k, y] = a.coord(n, x);
      m.map[n][x] = k == 0 ? 0 : b.index(n, k, f.map[k - 1][y]);
    }
  }
  return m;
}

Quotient make_quotient(const SetPtr& whole, const std::vector<std::vector<char>>& sub) {
  const int bound = whole->bound();
  for (int n = 0; n <= bound; ++n) {
    for (int x = 0; x < whole->count(n); ++x) {
      if (!sub[n][x]) continue;
      for (int i = 0; i <= n && n >= 1; ++i) {
        if (!sub[n - 1][whole->face(n, x, i)]) throw SimplicialError("quotient by a non-subcomplex (faces)");
      }
      for (int i = 0; i <= n && n < bound; ++i) {
        if (!sub[n + 1][whole->degeneracy(n, x, i)]) throw SimplicialError("quotient by a non-subcomplex (degeneracies)");
      }
    }
  }
  Quotient q;
  q.whole = whole;
  q.to_quotient.resize(bound + 1);
  q.from_quotient.resize(bound + 1);
  Tables t(bound);
  for (int n = 0; n <= bound; ++n) {
    q.from_quotient[n].push_back(-1);
    q.to_quotient[n].assign(whole->count(n), 0);
    for (int x = 0; x < whole->count(n); ++x) {
      if (sub[n][x]) continue;
      q.to_quotient[n][x] = static_cast<int>(q.from_quotient[n].size());
      q.from_quotient[n].push_back(x);
    }
    t.counts[n] = static_cast<int>(q.from_quotient[n].size());
  }
  for (int n = 0; n <= bound; ++n) {
    for (int z = 0; z < t.counts[n]; ++z) {
      const int x = q.from_quotient[n][z];
      if (n >= 1) {
        for (int i = 0; i <= n; ++i) t.faces[n].push_back(x < 0 ? 0 : q.to_quotient[n - 1][whole->face(n, x, i)]);
      }
      if (n < bound) {
        for (int i = 0; i <= n; ++i) {
          t.degeneracies[n].push_back(x < 0 ? 0 : q.to_quotient[n + 1][whole->degeneracy(n, x, i)]);
        }
      }
    }
  }
  q.set = finish(std::move(t), bound, 0);
  return q;
}

Quotient make_plus(const SetPtr& u) {
  std::vector<std::vector<char>> none(u->bound() + 1);
  for (int n = 0; n <= u->bound(); ++n) none[n].assign(u->count(n), 0);
  return make_quotient(u, none);
}

Morphism Quotient::projection() const {
  Morphism m{whole, set, to_quotient};
  return m;
}

Morphism quotient_map(const Quotient& a, const Quotient& b, const Morphism& f) {
  Morphism m{a.set, b.set, {}};
  m.map.resize(a.set->bound() + 1);
  for (int n = 0; n <= a.set->bound(); ++n) {
    m.map[n].resize(a.set->count(n));
    for (int z = 0; z < a.set->count(n); ++z) {
      const int x = a.from_quotient[n][z];
      m.map[n][z] = x < 0 ? 0 : b.to_quotient[n][f.map[n][x]];
    }
    // f must carry the collapsed part into the collapsed part.
    for (int x = 0; x < a.whole->count(n); ++x) {
      if (a.to_quotient[n][x] == 0 && b.to_quotient[n][f.map[n][x]] != 0) {
        throw SimplicialError("quotient map: subcomplex not carried into subcomplex");
      }
    }
  }
  return m;
}

ReducedCone make_reduced_cone(const SetPtr& based) {
  ReducedCone r;
  r.base = based;
  r.cone = make_cone(based, 0);
  const auto& cs = *r.cone.set;
  std::vector<std::vector<char>> sub(cs.bound() + 1);
  for (int n = 0; n <= cs.bound(); ++n) {
    sub[n].resize(cs.count(n));
    for (int x = 0; x < cs.count(n); ++x) {
      const auto [k, y] = r.cone.coord(n, x);
      sub[n][x] = k == 0 || y == based->basepoint_simplex(k - 1);
    }
  }
  r.quotient = make_quotient(r.cone.set, sub);
  r.set = r.quotient.set;
  return r;
}

Morphism ReducedCone::inclusion() const { return compose(quotient.projection(), cone.inclusion()); }

Morphism reduced_cone_map(const ReducedCone& a, const ReducedCone& b, const Morphism& f) {
  return quotient_map(a.quotient, b.quotient, cone_map(a.cone, b.cone, f));
}

Suspension make_suspension(const SetPtr& base) {
  Suspension s;
  s.base = base;
  s.cone = make_cone(base, 1);
  const auto& cs = *s.cone.set;
  std::vector<std::vector<char>> sub(cs.bound() + 1);
  for (int n = 0; n <= cs.bound(); ++n) {
    sub[n].resize(cs.count(n));
    for (int x = 0; x < cs.count(n); ++x) sub[n][x] = s.cone.base_count[n][x] == n + 1;
  }
  s.quotient = make_quotient(s.cone.set, sub);
  s.set = s.quotient.set;
  return s;
}

Morphism suspension_map(const Suspension& a, const Suspension& b, const Morphism& f) {
  return quotient_map(a.quotient, b.quotient, cone_map(a.cone, b.cone, f));
}

std::vector<int> ThickSimplex::word(int n, int x) const {
  const int a = static_cast<int>(alphabet.size());
  std::vector<int> w(n + 1);
  for (int j = n; j >= 0; --j) {
    w[j] = x % a;
    x /= a;
  }
  return w;
}

int ThickSimplex::index(const std::vector<int>& word) const {
  const int a = static_cast<int>(alphabet.size());
  int x = 0;
  for (int letter : word) x = x * a + letter;
  return x;
}

ThickSimplex make_thick_simplex(std::vector<int> alphabet, int bound) {
  ThickSimplex e;
  e.alphabet = std::move(alphabet);
  const int a = static_cast<int>(e.alphabet.size());
  Tables t(bound);
  int size = a;
  for (int n = 0; n <= bound; ++n) {
    t.counts[n] = size;
    for (int x = 0; x < size; ++x) {
      const auto w = e.word(n, x);
      if (n >= 1) {
        for (int i = 0; i <= n; ++i) {
          auto f = w;
          f.erase(f.begin() + i);
          t.faces[n].push_back(e.index(f));
        }
      }
      if (n < bound) {
        for (int i = 0; i <= n; ++i) {
          auto s = w;
          s.insert(s.begin() + i, w[i]);
          t.degeneracies[n].push_back(e.index(s));
        }
      }
    }
    size *= a;
  }
  e.set = finish(std::move(t), bound, std::nullopt);
  return e;
}

Morphism thick_map(const ThickSimplex& a, const ThickSimplex& b) {
  std::vector<int> position(a.alphabet.size());
  for (std::size_t p = 0; p < a.alphabet.size(); ++p) {
    auto it = std::find(b.alphabet.begin(), b.alphabet.end(), a.alphabet[p]);
    if (it == b.alphabet.end()) throw SimplicialError("thick_map: alphabet is not included");
    position[p] = static_cast<int>(it - b.alphabet.begin());
  }
  Morphism m{a.set, b.set, {}};
  m.map.resize(a.set->bound() + 1);
  for (int n = 0; n <= a.set->bound(); ++n) {
    m.map[n].resize(a.set->count(n));
    for (int x = 0; x < a.set->count(n); ++x) {
      auto w = a.word(n, x);
      for (auto& letter : w) letter = position[letter];
      m.map[n][x] = b.index(w);
    }
  }
  return m;
}

Wedge make_wedge(std::vector<SetPtr> parts, int bound) {
  Wedge w;
  w.parts = std::move(parts);
  w.insertion.resize(w.parts.size());
  w.located.resize(bound + 1);
  std::vector<int> counts(bound + 1, 1);
  for (std::size_t j = 0; j < w.parts.size(); ++j) {
    const auto& p = *w.parts[j];
    if (p.bound() != bound) throw SimplicialError("wedge parts must share the dimension bound");
    w.insertion[j].resize(bound + 1);
  }
  for (int n = 0; n <= bound; ++n) {
    w.located[n].push_back({-1, -1});
    for (std::size_t j = 0; j < w.parts.size(); ++j) {
      const auto& p = *w.parts[j];
      const int star = p.basepoint_simplex(n);
      w.insertion[j][n].assign(p.count(n), 0);
      for (int x = 0; x < p.count(n); ++x) {
        if (x == star) continue;
        w.insertion[j][n][x] = counts[n]++;
        w.located[n].push_back({static_cast<int>(j), x});
      }
    }
  }
  Tables t(bound);
  t.counts = counts;
  for (int n = 0; n <= bound; ++n) {
    for (const auto& [j, x] : w.located[n]) {
      if (n >= 1) {
        for (int i = 0; i <= n; ++i) t.faces[n].push_back(j < 0 ? 0 : w.insertion[j][n - 1][w.parts[j]->face(n, x, i)]);
      }
      if (n < bound) {
        for (int i = 0; i <= n; ++i) {
          t.degeneracies[n].push_back(j < 0 ? 0 : w.insertion[j][n + 1][w.parts[j]->degeneracy(n, x, i)]);
        }
      }
    }
  }
  w.set = finish(std::move(t), bound, 0);
  return w;
}

Morphism Wedge::insertion_morphism(int part) const {
  return Morphism{parts.at(part), set, insertion.at(part)};
}

Morphism wedge_map(const Wedge& a, const Wedge& b, const std::vector<Morphism>& maps) {
  if (maps.size() != a.parts.size() || a.parts.size() != b.parts.size()) throw SimplicialError("wedge_map: arity mismatch");
  Morphism m{a.set, b.set, {}};
  m.map.resize(a.set->bound() + 1);
  for (int n = 0; n <= a.set->bound(); ++n) {
    m.map[n].resize(a.set->count(n));
    for (int x = 0; x < a.set->count(n); ++x) {
      const auto [j, y] = a.located[n][x];
      m.map[n][x] = j < 0 ? 0 : b.insertion[j][n][maps[j].map[n][y]];
    }
  }
  return m;
}

Morphism glue(const Wedge& w, const SetPtr& target, const std::vector<const Morphism*>& maps) {
  if (maps.size() != w.parts.size()) throw SimplicialError("glue: arity mismatch");
  Morphism m{w.set, target, {}};
  m.map.resize(w.set->bound() + 1);
  for (int n = 0; n <= w.set->bound(); ++n) {
    m.map[n].resize(w.set->count(n));
    const int star = target->basepoint_simplex(n);
    for (int x = 0; x < w.set->count(n); ++x) {
      const auto [j, y] = w.located[n][x];
      m.map[n][x] = j < 0 ? star : maps[j]->map[n][y];
    }
  }
  return m;
}

}  // namespace fissile
