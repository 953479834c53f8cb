#include "fissile/brunnian.hpp"

#include <cctype>
#include <functional>

namespace fissile {

FreeWord reduce(const FreeWord& w) {
  FreeWord out;
  for (const Letter& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

FreeWord concat(const FreeWord& a, const FreeWord& b) {
  FreeWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return reduce(out);
}

FreeWord inverse(const FreeWord& w) {
  FreeWord out(w.rbegin(), w.rend());
  for (auto& l : out) l.exp = -l.exp;
  return out;
}

FreeWord commutator(const FreeWord& u, const FreeWord& v) {
  return concat(concat(u, v), concat(inverse(u), inverse(v)));
}

FreeWord generator_word(int gen) { return {Letter{gen, 1}}; }

FreeWord delete_outside(Subset j, const FreeWord& w) {
  FreeWord kept;
  for (const Letter& l : w) {
    if (j >> l.gen & 1u) kept.push_back(l);
  }
  return reduce(kept);
}

bool is_brunnian(const FreeWord& w, Subset ground) {
  for (Subset j : subsets_of(ground)) {
    if (j != ground && !delete_outside(j, w).empty()) return false;
  }
  return true;
}

int Nesting::weight() const {
  if (leaf()) return 1;
  return children[0].weight() + children[1].weight();
}

Nesting Nesting::node(Nesting left, Nesting right) {
  Nesting t;
  t.children.push_back(std::move(left));
  t.children.push_back(std::move(right));
  return t;
}

std::vector<Nesting> all_nestings(int s) {
  if (s < 1) return {};
  if (s == 1) return {Nesting{}};
  std::vector<Nesting> out;
  for (int left = 1; left < s; ++left) {
    for (const auto& l : all_nestings(left)) {
      for (const auto& r : all_nestings(s - left)) out.push_back(Nesting::node(l, r));
    }
  }
  return out;
}

Nesting left_comb(int s) {
  Nesting t;
  for (int i = 1; i < s; ++i) t = Nesting::node(std::move(t), Nesting{});
  return t;
}

std::string to_string(const Nesting& t) {
  if (t.leaf()) return "*";
  return "(" + to_string(t.children[0]) + "," + to_string(t.children[1]) + ")";
}

FreeWord nested_commutator(const Nesting& t, const std::vector<FreeWord>& words) {
  if (static_cast<int>(words.size()) != t.weight()) {
    throw std::invalid_argument("nested_commutator: nesting of weight " + std::to_string(t.weight()) + " given " +
                                std::to_string(words.size()) + " words");
  }
  std::size_t next = 0;
  std::function<FreeWord(const Nesting&)> walk = [&](const Nesting& n) -> FreeWord {
    if (n.leaf()) return reduce(words[next++]);
    FreeWord u = walk(n.children[0]);
    FreeWord v = walk(n.children[1]);
    return commutator(u, v);
  };
  return walk(t);
}

MagnusSeries MagnusSeries::one(int degree) {
  MagnusSeries s{degree, {}};
  s.terms[{}] = 1;
  return s;
}

MagnusSeries multiply(const MagnusSeries& a, const MagnusSeries& b) {
  const int d = std::min(a.degree, b.degree);
  MagnusSeries out{d, {}};
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      if (static_cast<int>(ma.size() + mb.size()) > d) continue;
      std::vector<int> m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      Integer& slot = out.terms[m];
      slot += ca * cb;
      if (slot.is_zero()) out.terms.erase(m);
    }
  }
  return out;
}

namespace {

MagnusSeries letter_series(const Letter& l, int degree) {
  MagnusSeries s = MagnusSeries::one(degree);
  std::vector<int> m;
  for (int k = 1; k <= degree; ++k) {
    m.push_back(l.gen);
    if (l.exp > 0) {
      if (k == 1) s.terms[m] = 1;
    } else {
      s.terms[m] = k % 2 ? -1 : 1;
    }
  }
  return s;
}

}  // namespace

MagnusSeries magnus(const FreeWord& w, int degree) {
  MagnusSeries s = MagnusSeries::one(degree);
  for (const Letter& l : w) s = multiply(s, letter_series(l, degree));
  return s;
}

MagnusSeries substitute_zero(const MagnusSeries& s, int gen) {
  MagnusSeries out{s.degree, {}};
  for (const auto& [m, c] : s.terms) {
    if (std::find(m.begin(), m.end(), gen) == m.end()) out.terms[m] = c;
  }
  return out;
}

std::optional<int> lcs_degree(const FreeWord& w, int max_degree) {
  std::optional<int> best;
  for (const auto& [m, c] : magnus(reduce(w), max_degree).terms) {
    if (m.empty()) continue;
    const int d = static_cast<int>(m.size());
    if (!best || d < *best) best = d;
  }
  return best;
}

FreeWord parse_word(std::string_view text) {
  FreeWord out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::string_view token = text.substr(start, i - start);
    const auto fail = [&] {
      return WordParseError("malformed token '" + std::string(token) + "' at position " + std::to_string(start) +
                                " (expected xN or xN^-1)",
                            start);
    };
    if (token.size() < 2 || token[0] != 'x') throw fail();
    std::size_t j = 1;
    long gen = 0;
    while (j < token.size() && std::isdigit(static_cast<unsigned char>(token[j]))) {
      gen = gen * 10 + (token[j] - '0');
      if (gen > 31) throw fail();
      ++j;
    }
    if (j == 1 || gen < 1) throw fail();
    int exp = 1;
    if (j < token.size()) {
      if (token.substr(j) != "^-1") throw fail();
      exp = -1;
    }
    out.push_back({static_cast<int>(gen - 1), exp});
  }
  return out;
}

std::string format_word(const FreeWord& w) {
  std::string out;
  for (const Letter& l : w) {
    if (!out.empty()) out += ' ';
    out += "x" + std::to_string(l.gen + 1);
    if (l.exp < 0) out += "^-1";
  }
  return out;
}

nlohmann::json series_to_json(const MagnusSeries& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [m, c] : s.terms) {
    std::string mono;
    for (int g : m) mono += (mono.empty() ? "X" : " X") + std::to_string(g + 1);
    out.push_back({{"monomial", mono.empty() ? "1" : mono}, {"coeff", to_string(c)}});
  }
  return out;
}

}  // namespace fissile
