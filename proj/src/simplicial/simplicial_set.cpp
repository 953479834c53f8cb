#include "fissile/simplicial/simplicial_set.hpp"

#include <algorithm>
#include <numeric>

namespace fissile {

namespace {

std::string at(int n, int x) { return "(" + std::to_string(n) + "," + std::to_string(x) + ")"; }

}  // namespace

SimplicialSet::SimplicialSet(int bound, std::vector<int> counts, std::vector<std::vector<int>> faces,
                             std::vector<std::vector<int>> degeneracies, std::optional<int> basepoint)
    : bound_(bound),
      counts_(std::move(counts)),
      faces_(std::move(faces)),
      degeneracies_(std::move(degeneracies)),
      basepoint_(basepoint) {
  check_tables();
  compute_derived();
}

std::size_t SimplicialSet::total_simplices() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
}

int SimplicialSet::basepoint() const {
  if (!basepoint_) throw SimplicialError("simplicial set is not based");
  return *basepoint_;
}

int SimplicialSet::degenerate_vertex(int n, int v) const {
  int x = v;
  for (int d = 0; d < n; ++d) x = degeneracy(d, x, 0);
  return x;
}

int SimplicialSet::basepoint_simplex(int n) const { return degenerate_vertex(n, basepoint()); }

int SimplicialSet::max_nondegenerate_dim() const noexcept {
  for (int n = bound_; n >= 0; --n) {
    if (!nondegenerate_[n].empty()) return n;
  }
  return -1;
}

void SimplicialSet::check_tables() const {
  if (bound_ < 0) throw SimplicialError("negative dimension bound");
  const auto dims = static_cast<std::size_t>(bound_) + 1;
  if (counts_.size() != dims || faces_.size() != dims || degeneracies_.size() != dims) {
    throw SimplicialError("table sizes disagree with the dimension bound");
  }
  for (int n = 0; n <= bound_; ++n) {
    if (counts_[n] < 0) throw SimplicialError("negative simplex count");
    const auto width = static_cast<std::size_t>(counts_[n]) * (n + 1);
    if (n >= 1) {
      if (faces_[n].size() != width) throw SimplicialError("face table has the wrong size");
      for (int v : faces_[n]) {
        if (v < 0 || v >= counts_[n - 1]) throw SimplicialError("face out of range in dimension " + std::to_string(n));
      }
    } else if (!faces_[0].empty()) {
      throw SimplicialError("vertices have no faces");
    }
    if (n < bound_) {
      if (degeneracies_[n].size() != width) throw SimplicialError("degeneracy table has the wrong size");
      for (int v : degeneracies_[n]) {
        if (v < 0 || v >= counts_[n + 1]) throw SimplicialError("degeneracy out of range in dimension " + std::to_string(n));
      }
    } else if (!degeneracies_[n].empty()) {
      throw SimplicialError("top dimension has no degeneracies");
    }
  }
  if (basepoint_ && (*basepoint_ < 0 || *basepoint_ >= counts_[0])) throw SimplicialError("basepoint out of range");

  for (int n = 2; n <= bound_; ++n) {
    for (int x = 0; x < counts_[n]; ++x) {
      for (int j = 1; j <= n; ++j) {
        for (int i = 0; i < j; ++i) {
          if (face(n - 1, face(n, x, j), i) != face(n - 1, face(n, x, i), j - 1)) {
            throw SimplicialError("d_i d_j identity fails at " + at(n, x));
          }
        }
      }
    }
  }
  for (int n = 0; n < bound_; ++n) {
    for (int x = 0; x < counts_[n]; ++x) {
      for (int j = 0; j <= n; ++j) {
        const int y = degeneracy(n, x, j);
        for (int i = 0; i <= n + 1; ++i) {
          const int lhs = face(n + 1, y, i);
          int rhs;
          if (i == j || i == j + 1) {
            rhs = x;
          } else if (i < j) {
            rhs = degeneracy(n - 1, face(n, x, i), j - 1);
          } else {
            rhs = degeneracy(n - 1, face(n, x, i - 1), j);
          }
          if (lhs != rhs) throw SimplicialError("d_i s_j identity fails at " + at(n, x));
        }
        if (n + 1 < bound_) {
          for (int i = 0; i <= j; ++i) {
            if (degeneracy(n + 1, y, i) != degeneracy(n + 1, degeneracy(n, x, i), j + 1)) {
              throw SimplicialError("s_i s_j identity fails at " + at(n, x));
            }
          }
        }
      }
    }
  }
}

void SimplicialSet::compute_derived() {
  const auto dims = static_cast<std::size_t>(bound_) + 1;
  degenerate_.assign(dims, {});
  nondegenerate_.assign(dims, {});
  root_.assign(dims, {});
  root_op_.assign(dims, {});
  vertices_.assign(dims, {});
  for (int n = 0; n <= bound_; ++n) {
    degenerate_[n].assign(counts_[n], 0);
    root_[n].resize(counts_[n]);
    root_op_[n].resize(counts_[n]);
    vertices_[n].resize(counts_[n]);
    for (int x = 0; x < counts_[n]; ++x) {
      if (n == 0) {
        vertices_[0][x] = {x};
      } else {
        vertices_[n][x] = vertices_[n - 1][face(n, x, n)];
        vertices_[n][x].push_back(vertices_[n - 1][face(n, x, 0)].back());
      }
      int split = -1;
      for (int i = 0; i < n && split < 0; ++i) {
        if (degeneracy(n - 1, face(n, x, i), i) == x) split = i;
      }
      if (split < 0) {
        nondegenerate_[n].push_back(x);
        root_[n][x] = x;
        root_op_[n][x].resize(n + 1);
        std::iota(root_op_[n][x].begin(), root_op_[n][x].end(), 0);
      } else {
        degenerate_[n][x] = 1;
        const int y = face(n, x, split);
        root_[n][x] = root_[n - 1][y];
        const auto& op = root_op_[n - 1][y];
        auto& out = root_op_[n][x];
        out.resize(n + 1);
        for (int t = 0; t <= n; ++t) out[t] = op[t <= split ? t : t - 1];
      }
    }
  }
}

int SimplicialSet::apply_surjection(int m, int y, std::span<const int> eta) const {
  std::vector<int> e(eta.begin(), eta.end());
  std::vector<int> splits;
  while (static_cast<int>(e.size()) > m + 1) {
    int j = static_cast<int>(e.size()) - 2;
    while (j >= 0 && e[j] != e[j + 1]) --j;
    if (j < 0) throw SimplicialError("operator is not a surjection onto the given dimension");
    splits.push_back(j);
    e.erase(e.begin() + j + 1);
  }
  int z = y;
  int dim = m;
  for (auto it = splits.rbegin(); it != splits.rend(); ++it) z = degeneracy(dim++, z, *it);
  return z;
}

void SimplicialSet::build_lookup() const {
  vertex_determined_ = true;
  for (int n = 0; n <= bound_; ++n) {
    for (int x = 0; x < counts_[n]; ++x) {
      if (!by_vertices_.emplace(vertices_[n][x], x).second) vertex_determined_ = false;
    }
  }
}

bool SimplicialSet::vertex_determined() const {
  std::call_once(lookup_once_, [this] { build_lookup(); });
  return vertex_determined_;
}

std::optional<int> SimplicialSet::find_by_vertices(std::span<const int> seq) const {
  if (!vertex_determined()) throw SimplicialError("simplicial set is not determined by vertices");
  auto it = by_vertices_.find(std::vector<int>(seq.begin(), seq.end()));
  if (it == by_vertices_.end()) return std::nullopt;
  return it->second;
}

SetPtr make_set(int bound, std::vector<int> counts, std::vector<std::vector<int>> faces,
                std::vector<std::vector<int>> degeneracies, std::optional<int> basepoint) {
  return std::make_shared<const SimplicialSet>(bound, std::move(counts), std::move(faces),
                                               std::move(degeneracies), basepoint);
}

SetPtr with_basepoint(const SimplicialSet& s, std::optional<int> basepoint) {
  return make_set(s.bound(), s.counts(), s.face_table(), s.degeneracy_table(), basepoint);
}

bool same_tables(const SimplicialSet& a, const SimplicialSet& b) {
  return a.bound() == b.bound() && a.counts() == b.counts() && a.face_table() == b.face_table() &&
         a.degeneracy_table() == b.degeneracy_table() && a.basepoint_if_any() == b.basepoint_if_any();
}

Morphism identity_morphism(const SetPtr& s) {
  Morphism m{s, s, {}};
  m.map.resize(s->bound() + 1);
  for (int n = 0; n <= s->bound(); ++n) {
    m.map[n].resize(s->count(n));
    std::iota(m.map[n].begin(), m.map[n].end(), 0);
  }
  return m;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (f.target.get() != g.source.get() && !same_tables(*f.target, *g.source)) {
    throw SimplicialError("composing non-composable morphisms");
  }
  Morphism out{f.source, g.target, f.map};
  for (std::size_t n = 0; n < out.map.size(); ++n) {
    for (auto& v : out.map[n]) {
      if (v >= 0) v = g.map[n][v];
    }
  }
  return out;
}

std::string check_morphism(const Morphism& m, bool require_based) {
  const auto& s = *m.source;
  const auto& t = *m.target;
  if (s.bound() != t.bound()) return "dimension bounds differ";
  if (m.map.size() != static_cast<std::size_t>(s.bound()) + 1) return "map has the wrong number of dimensions";
  for (int n = 0; n <= s.bound(); ++n) {
    if (m.map[n].size() != static_cast<std::size_t>(s.count(n))) return "map has the wrong size in dimension " + std::to_string(n);
    for (int v : m.map[n]) {
      if (v < 0 || v >= t.count(n)) return "map undefined or out of range in dimension " + std::to_string(n);
    }
  }
  for (int n = 1; n <= s.bound(); ++n) {
    for (int x = 0; x < s.count(n); ++x) {
      for (int i = 0; i <= n; ++i) {
        if (m.map[n - 1][s.face(n, x, i)] != t.face(n, m.map[n][x], i)) {
          return "does not commute with d_" + std::to_string(i) + " at " + at(n, x);
        }
      }
    }
  }
  for (int n = 0; n < s.bound(); ++n) {
    for (int x = 0; x < s.count(n); ++x) {
      for (int i = 0; i <= n; ++i) {
        if (m.map[n + 1][s.degeneracy(n, x, i)] != t.degeneracy(n, m.map[n][x], i)) {
          return "does not commute with s_" + std::to_string(i) + " at " + at(n, x);
        }
      }
    }
  }
  if (require_based && s.based()) {
    if (!t.based()) return "target is not based";
    if (m.map[0][s.basepoint()] != t.basepoint()) return "basepoint not preserved";
  }
  return {};
}

bool same_map(const Morphism& a, const Morphism& b) { return a.map == b.map; }

Morphism from_vertex_map(const SetPtr& source, const SetPtr& target, std::span<const int> vertex_map) {
  if (vertex_map.size() != static_cast<std::size_t>(source->count(0))) throw SimplicialError("vertex map has the wrong size");
  Morphism m{source, target, {}};
  m.map.resize(source->bound() + 1);
  std::vector<int> seq;
  for (int n = 0; n <= source->bound(); ++n) {
    m.map[n].resize(source->count(n));
    for (int x = 0; x < source->count(n); ++x) {
      seq.clear();
      for (int v : source->vertices(n, x)) seq.push_back(vertex_map[v]);
      auto image = target->find_by_vertices(seq);
      if (!image) throw SimplicialError("vertex map does not extend: image of " + at(n, x) + " is not a simplex");
      m.map[n][x] = *image;
    }
  }
  return m;
}

Morphism extend_from_nondegenerate(const SetPtr& source, const SetPtr& target,
                                   const std::vector<std::vector<int>>& values) {
  Morphism m{source, target, {}};
  m.map.resize(source->bound() + 1);
  for (int n = 0; n <= source->bound(); ++n) {
    m.map[n].resize(source->count(n));
    for (int x = 0; x < source->count(n); ++x) {
      const int r = source->root(n, x);
      const auto& eta = source->root_operator(n, x);
      const int rd = eta.back();
      const int image = values[rd][r];
      m.map[n][x] = image < 0 ? -1 : (rd == n ? image : target->apply_surjection(rd, image, eta));
    }
  }
  return m;
}

Morphism descend(const Morphism& p, const Morphism& g) {
  if (p.source.get() != g.source.get() && !same_tables(*p.source, *g.source)) {
    throw SimplicialError("descend: morphisms have different sources");
  }
  Morphism h{p.target, g.target, {}};
  h.map.resize(p.target->bound() + 1);
  for (int n = 0; n <= p.target->bound(); ++n) {
    h.map[n].assign(p.target->count(n), -1);
    for (int x = 0; x < p.source->count(n); ++x) {
      int& slot = h.map[n][p.map[n][x]];
      if (slot < 0) {
        slot = g.map[n][x];
      } else if (slot != g.map[n][x]) {
        throw SimplicialError("descend: map is not constant on a fibre in dimension " + std::to_string(n));
      }
    }
    for (int v : h.map[n]) {
      if (v < 0) throw SimplicialError("descend: projection is not surjective");
    }
  }
  return h;
}

Morphism constant_morphism(const SetPtr& source, const SetPtr& target, int vertex) {
  Morphism m{source, target, {}};
  m.map.resize(source->bound() + 1);
  for (int n = 0; n <= source->bound(); ++n) {
    m.map[n].assign(source->count(n), target->degenerate_vertex(n, vertex));
  }
  return m;
}

bool lands_in(const Morphism& m, const std::vector<std::vector<char>>& support) {
  for (std::size_t n = 0; n < m.map.size(); ++n) {
    for (int v : m.map[n]) {
      if (!support[n][v]) return false;
    }
  }
  return true;
}

Key morphism_key(const Morphism& m) {
  KeyWriter w;
  for (const auto& level : m.map) {
    for (int v : level) w.i32(v);
  }
  return std::move(w).finish();
}

Morphism morphism_from_key(const SetPtr& source, const SetPtr& target, const Key& key) {
  KeyReader r(key);
  Morphism m{source, target, {}};
  m.map.resize(source->bound() + 1);
  for (int n = 0; n <= source->bound(); ++n) {
    m.map[n].resize(source->count(n));
    for (auto& v : m.map[n]) {
      v = r.i32();
      if (v < 0 || v >= target->count(n)) throw KeyError("morphism key out of range");
    }
  }
  r.expect_done();
  return m;
}

}  // namespace fissile
