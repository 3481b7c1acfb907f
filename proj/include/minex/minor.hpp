#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minex/graph.hpp"

namespace minex {

// Small simple graph playing the role of the minor.
class PatternGraph {
 public:
  PatternGraph() = default;
  PatternGraph(std::size_t n, std::vector<Edge> edges);

  static PatternGraph complete(std::size_t m);

  std::size_t size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool adjacent(std::size_t i, std::size_t j) const;
  bool is_complete() const { return edges_.size() == n_ * (n_ - 1) / 2; }
  // "K<m>" for complete patterns, "custom" otherwise.
  std::string name() const;

  friend bool operator==(const PatternGraph&, const PatternGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

// Branch set i represents pattern vertex i.
struct BranchDecomposition {
  PatternGraph pattern;
  std::vector<VertexSet> sets;
};

struct MinorVerdict {
  bool shape_ok = true;        // one set per pattern vertex, members are host vertices
  bool disjoint = true;
  bool connected = true;       // also fails on an empty set
  bool edges_realized = true;

  std::string shape_witness;
  // First overlap: set indices and a shared vertex.
  std::optional<std::pair<std::size_t, std::size_t>> overlap_sets;
  std::optional<Vertex> overlap_vertex;
  std::optional<std::size_t> disconnected_set;
  std::optional<Edge> missing_pattern_edge;

  bool passed() const { return shape_ok && disjoint && connected && edges_realized; }
};

MinorVerdict verify_minor(const Graph& host, const BranchDecomposition& bd);

// Requires a connected pattern.
bool has_cut_vertex(const PatternGraph& pattern);

struct CliqueSearchOptions {
  std::uint64_t budget = 1'000'000;  // node expansions, shared by all phases
  std::uint64_t seed = 0;
  int greedy_restarts = 16;
};

struct CliqueSearchResult {
  std::optional<BranchDecomposition> decomposition;  // verified when present
  std::uint64_t expansions = 0;
  // True when the search space was exhausted: absence is then certain for this host.
  bool exhaustive = false;
};

// Greedy seeded growth followed by an exact backtracking search, both
// restricted to biconnected blocks when m >= 3.
CliqueSearchResult find_clique_minor(const Graph& host, std::size_t m,
                                     const CliqueSearchOptions& options = {});

inline constexpr std::size_t kOracleMaxVertices = 12;

// Exhaustive assignment of disjoint connected vertex subsets; host size <= 12.
bool brute_force_minor_oracle(const Graph& host, const PatternGraph& pattern);

}  // namespace minex
