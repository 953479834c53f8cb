#include "fissile/simplicial/enumerate.hpp"

#include <utility>

#include "fissile/subset.hpp"

namespace fissile {

std::size_t default_morphism_cap() {
  return static_cast<std::size_t>(env_guard("FISSILE_MAX_MORPHISMS", 200000));
}

std::vector<Morphism> enumerate_based_morphisms(const SetPtr& t, const SetPtr& z) {
  return enumerate_based_morphisms(t, z, default_morphism_cap());
}

namespace {

class Search {
 public:
  Search(const SetPtr& t, const SetPtr& z, std::size_t cap, const std::vector<std::vector<int>>* prescribed)
      : t_(t), z_(z), cap_(cap), prescribed_(prescribed) {
    if (t->bound() != z->bound()) throw SimplicialError("enumerate: dimension bounds differ");
    if (!t->based() || !z->based()) throw SimplicialError("enumerate: both sets must be based");
    for (int n = 0; n <= t->bound(); ++n) {
      for (int x : t->nondegenerate(n)) order_.emplace_back(n, x);
    }
    values_.resize(t->bound() + 1);
    for (int n = 0; n <= t->bound(); ++n) values_[n].assign(t->count(n), -1);
    by_first_face_.resize(z->bound() + 1);
    for (int n = 1; n <= z->bound(); ++n) {
      by_first_face_[n].resize(z->count(n - 1));
      for (int y = 0; y < z->count(n); ++y) by_first_face_[n][z->face(n, y, 0)].push_back(y);
    }
  }

  std::vector<Morphism> run() {
    step(0);
    return std::move(results_);
  }

 private:
  int image(int n, int x) const {
    const int r = t_->root(n, x);
    const auto& eta = t_->root_operator(n, x);
    const int m = eta.back();
    return m == n ? values_[n][r] : z_->apply_surjection(m, values_[m][r], eta);
  }

  bool allowed(int n, int x, int y) const {
    if (prescribed_ == nullptr) return true;
    const int want = (*prescribed_)[n][x];
    return want < 0 || want == y;
  }

  void step(std::size_t at) {
    if (at == order_.size()) {
      record();
      return;
    }
    const auto [n, x] = order_[at];
    if (n == 0) {
      if (x == t_->basepoint()) {
        try_value(at, n, x, z_->basepoint());
      } else {
        for (int y = 0; y < z_->count(0); ++y) try_value(at, n, x, y);
      }
      return;
    }
    std::vector<int> faces(n + 1);
    for (int i = 0; i <= n; ++i) faces[i] = image(n - 1, t_->face(n, x, i));
    for (int y : by_first_face_[n][faces[0]]) {
      bool ok = true;
      for (int i = 1; i <= n && ok; ++i) ok = z_->face(n, y, i) == faces[i];
      if (ok) try_value(at, n, x, y);
    }
  }

  void try_value(std::size_t at, int n, int x, int y) {
    if (!allowed(n, x, y)) return;
    values_[n][x] = y;
    step(at + 1);
    values_[n][x] = -1;
  }

  void record() {
    Morphism m = extend_from_nondegenerate(t_, z_, values_);
    if (!check_morphism(m).empty()) return;
    if (prescribed_ != nullptr) {
      for (int n = 0; n <= t_->bound(); ++n) {
        for (int x = 0; x < t_->count(n); ++x) {
          const int want = (*prescribed_)[n][x];
          if (want >= 0 && want != m.map[n][x]) return;
        }
      }
    }
    if (results_.size() >= cap_) throw GuardExceeded("morphism enumeration exceeded its cap");
    results_.push_back(std::move(m));
  }

  SetPtr t_, z_;
  std::size_t cap_;
  const std::vector<std::vector<int>>* prescribed_;
  std::vector<std::pair<int, int>> order_;
  std::vector<std::vector<int>> values_;
  std::vector<std::vector<std::vector<int>>> by_first_face_;
  std::vector<Morphism> results_;
};

}  // namespace

std::vector<Morphism> enumerate_based_morphisms(const SetPtr& t, const SetPtr& z, std::size_t cap,
                                                const std::vector<std::vector<int>>* prescribed) {
  return Search(t, z, cap, prescribed).run();
}

}  // namespace fissile
