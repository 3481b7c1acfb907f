#pragma once

#include <cstdint>
#include <vector>

#include "minex/graph.hpp"
#include "minex/minor.hpp"

namespace minex {

struct Collapse {
  Graph quotient;
  // classes[q] is the preimage of quotient vertex q; ordered by smallest member.
  std::vector<VertexSet> classes;
  std::vector<Vertex> class_of;  // host vertex -> quotient vertex
};

// One quotient vertex per class of class_id (arbitrary ids, one per host
// vertex); classes joined by a host edge become adjacent. Each class must be
// connected in x.
Collapse babai_collapse(const Graph& x, const std::vector<std::uint64_t>& class_id);

// A decomposition over the quotient pulled back to x: each branch set becomes
// the union of its classes. Connected classes keep it connected, so nothing
// needs pruning.
BranchDecomposition lift_decomposition(const Collapse& c, const BranchDecomposition& bd);

}  // namespace minex
