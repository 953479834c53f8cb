#include "fissile/simplicial/contraction.hpp"

#include <algorithm>

namespace fissile {

CanonicalContraction make_canonical_contraction(const std::vector<int>& alphabet, int letter, int bound) {
  auto pos = std::find(alphabet.begin(), alphabet.end(), letter);
  if (pos == alphabet.end()) throw SimplicialError("contraction letter not in the alphabet");
  CanonicalContraction c;
  c.letter = letter;
  c.thick = make_thick_simplex(alphabet, bound);
  c.suspension = make_suspension(c.thick.set);
  const Cone& hat = c.suspension.cone;
  c.outer = make_cone(hat.set, 0);
  c.reduced = make_reduced_cone(c.suspension.set);

  // σ̃_a on vertices: the outer apex goes to the letter, everything else stays.
  std::vector<int> vmap(c.outer.set->count(0));
  vmap[Cone::apex()] = hat.index(0, 1, static_cast<int>(pos - alphabet.begin()));
  for (int v = 1; v < c.outer.set->count(0); ++v) vmap[v] = c.outer.coord(0, v).second;
  c.sigma_tilde = from_vertex_map(c.outer.set, hat.set, vmap);

  const Morphism q = c.suspension.projection();
  const Morphism cq = cone_map(c.outer, c.reduced.cone, q);
  c.sigma_bar = descend(cq, compose(q, c.sigma_tilde));
  c.sigma = descend(c.reduced.quotient.projection(), c.sigma_bar);
  return c;
}

}  // namespace fissile
