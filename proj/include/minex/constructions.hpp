#pragma once

#include <vector>

#include "minex/group.hpp"
#include "minex/minor.hpp"

namespace minex {

// A Cayley ball together with a clique decomposition inside it.
struct MinorInstance {
  GroupSpec spec;
  CayleyBall ball;
  BranchDecomposition decomposition;
  std::vector<std::vector<Element>> element_sets;
};

// Z^2 with gens (+-1,0), (+-2,0), (0,+-1).
GroupSpec z2_s2_spec();

// K_m inside the radius 3m+2 ball of Cay(Z^2, S2):
//   V_1 = {(2j,1) : 1 <= j <= m}
//   V_k = {(2k-1,y) : 1 <= y <= k} u {(x,k) : x even, 2k <= x <= 2m}   (k >= 2)
MinorInstance construct_z2_s2_minor(int m);

// K_m inside the radius 2m+1 ball of Cay(G, spec.gens), where s1, s2 span a
// copy of Z^2 and s3 commutes with both but lies outside it:
//   V_1 = {l s1 : 1 <= l <= m}
//   V_k = {k s1 + j s2 + s3 : 0 <= j < k} u {l s1 + (k-1) s2 : k <= l <= m}
// spec.gens must contain s1, s2, s3 and their inverses.
MinorInstance construct_z2xc_minor(int m, const GroupSpec& spec, const Element& s1,
                                   const Element& s2, const Element& s3);

// Z^2 x C with gens +-e1, +-e2, +-e3, where C is cyclic of the given order or
// infinite cyclic when order == 0.
GroupSpec z2xc_spec(int order);

}  // namespace minex
