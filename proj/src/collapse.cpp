#include "minex/collapse.hpp"

#include <algorithm>
#include <map>

#include "minex/error.hpp"

namespace minex {

Collapse babai_collapse(const Graph& x, const std::vector<std::uint64_t>& class_id) {
  const std::size_t n = x.num_vertices();
  require(class_id.size() == n, "class map must assign exactly one class to every vertex");

  // Vertices are scanned in id order, so the first sighting of a class is its smallest member.
  std::map<std::uint64_t, Vertex> rank;
  Collapse c;
  c.class_of.resize(n);
  std::vector<std::vector<Vertex>> members;
  for (Vertex v = 0; v < n; ++v) {
    auto [it, fresh] = rank.emplace(class_id[v], static_cast<Vertex>(members.size()));
    if (fresh) members.emplace_back();
    members[it->second].push_back(v);
    c.class_of[v] = it->second;
  }
  for (std::size_t q = 0; q < members.size(); ++q) {
    c.classes.emplace_back(std::move(members[q]));
    require(is_connected_subset(x, c.classes.back()),
            "class " + std::to_string(q) + " is not connected in the host");
  }

  GraphBuilder builder(c.classes.size());
  for (const Edge& e : x.edges()) {
    if (c.class_of[e.u] != c.class_of[e.v]) builder.add_edge(c.class_of[e.u], c.class_of[e.v]);
  }
  c.quotient = std::move(builder).build();
  return c;
}

BranchDecomposition lift_decomposition(const Collapse& c, const BranchDecomposition& bd) {
  BranchDecomposition out{bd.pattern, {}};
  for (const VertexSet& s : bd.sets) {
    std::vector<Vertex> members;
    for (Vertex q : s) {
      require(q < c.classes.size(), "branch set references an unknown quotient vertex");
      members.insert(members.end(), c.classes[q].begin(), c.classes[q].end());
    }
    out.sets.emplace_back(std::move(members));
  }
  return out;
}

}  // namespace minex
