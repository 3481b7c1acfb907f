#include "minex/minor.hpp"

#include <algorithm>

#include "minex/error.hpp"

namespace minex {

PatternGraph::PatternGraph(std::size_t n, std::vector<Edge> edges) : n_(n) {
  for (const Edge& e : edges) {
    require(e.u != e.v, "pattern graph has a self-loop");
    require(e.v < n, "pattern edge references an unknown vertex");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
}

PatternGraph PatternGraph::complete(std::size_t m) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) edges.emplace_back(i, j);
  }
  return PatternGraph(m, std::move(edges));
}

bool PatternGraph::adjacent(std::size_t i, std::size_t j) const {
  if (i == j) return false;
  return std::binary_search(edges_.begin(), edges_.end(),
                            Edge(static_cast<Vertex>(i), static_cast<Vertex>(j)));
}

std::string PatternGraph::name() const {
  return is_complete() ? "K" + std::to_string(n_) : "custom";
}

MinorVerdict verify_minor(const Graph& host, const BranchDecomposition& bd) {
  MinorVerdict verdict;
  if (bd.sets.size() != bd.pattern.size()) {
    verdict.shape_ok = false;
    verdict.shape_witness = "pattern has " + std::to_string(bd.pattern.size()) +
                            " vertices but " + std::to_string(bd.sets.size()) +
                            " branch sets were given";
    return verdict;
  }
  for (std::size_t i = 0; i < bd.sets.size(); ++i) {
    for (Vertex v : bd.sets[i]) {
      if (!host.contains(v)) {
        verdict.shape_ok = false;
        verdict.shape_witness =
            "branch set " + std::to_string(i) + " contains unknown vertex " + std::to_string(v);
        return verdict;
      }
    }
  }

  std::vector<std::int64_t> owner(host.num_vertices(), -1);
  for (std::size_t i = 0; i < bd.sets.size() && verdict.disjoint; ++i) {
    for (Vertex v : bd.sets[i]) {
      if (owner[v] >= 0) {
        verdict.disjoint = false;
        verdict.overlap_sets = {static_cast<std::size_t>(owner[v]), i};
        verdict.overlap_vertex = v;
        break;
      }
      owner[v] = static_cast<std::int64_t>(i);
    }
  }

  for (std::size_t i = 0; i < bd.sets.size(); ++i) {
    if (!is_connected_subset(host, bd.sets[i])) {
      verdict.connected = false;
      verdict.disconnected_set = i;
      break;
    }
  }

  for (const Edge& pe : bd.pattern.edges()) {
    bool realized = false;
    for (Vertex v : bd.sets[pe.u]) {
      for (Vertex w : host.neighbors(v)) {
        if (bd.sets[pe.v].contains(w)) {
          realized = true;
          break;
        }
      }
      if (realized) break;
    }
    if (!realized) {
      verdict.edges_realized = false;
      verdict.missing_pattern_edge = pe;
      break;
    }
  }
  return verdict;
}

bool has_cut_vertex(const PatternGraph& pattern) {
  const Graph g = Graph::from_edges(pattern.size(), pattern.edges());
  require(pattern.size() > 0 && connected_components(g).size() == 1,
          "has_cut_vertex requires a connected pattern");
  for (Vertex removed = 0; removed < pattern.size(); ++removed) {
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < pattern.size(); ++v) {
      if (v != removed) rest.push_back(v);
    }
    if (rest.empty()) continue;
    if (!is_connected_subset(g, VertexSet(std::move(rest)))) return true;
  }
  return false;
}

}  // namespace minex
