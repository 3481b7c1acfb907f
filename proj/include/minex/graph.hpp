#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace minex {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

// Sorted, duplicate-free set of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> members);
  explicit VertexSet(std::vector<Vertex> members);

  bool contains(Vertex v) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  Vertex front() const { return members_.front(); }
  const std::vector<Vertex>& members() const { return members_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> members_;
};

// Sorted, duplicate-free set of unordered vertex pairs.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::vector<Edge> members);

  bool contains(Edge e) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  const std::vector<Edge>& members() const { return members_; }

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  std::vector<Edge> members_;
};

// Finite simple undirected graph on vertices 0..n-1, stored as CSR with sorted
// neighbor lists. Immutable once built; every edge carries a dense id so that
// algorithms can delete edges through a mask instead of copying the graph.
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges,
                          std::vector<std::string> labels = {});

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return edges_.size(); }
  bool contains(Vertex v) const { return v < num_vertices(); }

  std::span<const Vertex> neighbors(Vertex v) const;
  // Edge ids aligned index-by-index with neighbors(v).
  std::span<const EdgeId> incident_edges(Vertex v) const;
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(Vertex u, Vertex v) const;
  std::optional<EdgeId> edge_id(Vertex u, Vertex v) const;
  const Edge& edge(EdgeId id) const { return edges_[id]; }
  // Lexicographically sorted; the index of an edge is its id.
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_labels() const { return !labels_.empty(); }
  // Empty string when the graph carries no labels.
  const std::string& label(Vertex v) const;
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  friend class GraphBuilder;

  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
  std::vector<EdgeId> adjacency_edge_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t num_vertices);

  // Duplicate edges collapse; self-loops and unknown endpoints throw.
  void add_edge(Vertex u, Vertex v);
  // Bulk form of add_edge; avoids a copy when the builder holds no edges yet.
  void add_edges(std::vector<Edge> edges);
  void set_label(Vertex v, std::string label);
  Graph build() &&;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
};

using Distances = std::vector<std::int32_t>;
inline constexpr std::int32_t kUnreachable = -1;

// Optional restrictions for breadth-first search. Masks are indexed by edge
// id / vertex id; a nonzero entry in removed_edges deletes that edge, a zero
// entry in allowed_vertices hides that vertex.
struct BfsOptions {
  const std::vector<char>* removed_edges = nullptr;
  const std::vector<char>* allowed_vertices = nullptr;
  std::int32_t max_depth = -1;
};

// Distance from source to every vertex of its component; kUnreachable
// elsewhere.
Distances bfs_distances(const Graph& g, Vertex source);

// Multi-source variant with edge deletion and vertex restriction.
Distances bfs_distances(const Graph& g, std::span<const Vertex> sources,
                        const BfsOptions& options);

// Vertices in nondecreasing distance from source, ties by discovery order
// over sorted neighbor lists.
std::vector<Vertex> bfs_order(const Graph& g, Vertex source);

std::vector<VertexSet> connected_components(const Graph& g);

// Component index per vertex after deleting the masked edges; components are
// numbered by their smallest vertex.
std::vector<std::uint32_t> component_labels(const Graph& g,
                                            const std::vector<char>* removed_edges,
                                            std::size_t* num_components = nullptr);

bool is_connected_subset(const Graph& g, const VertexSet& s);

// Maximum pairwise distance in the ambient metric of g.
std::uint32_t set_diameter(const Graph& g, const VertexSet& s);
// Maximum pairwise distance in the subgraph induced on s (diagnostic).
std::uint32_t induced_diameter(const Graph& g, const VertexSet& s);

using Path = std::vector<Vertex>;

struct DisjointPaths {
  std::vector<Path> paths;
  // Present when fewer than the requested number of paths exist; its size
  // equals paths.size() minus a direct edge between shared ends.
  std::optional<VertexSet> separator;
};

// Up to k pairwise vertex-disjoint a-b paths via unit vertex-capacity max
// flow. A vertex in both a and b yields a zero-length path. With
// share_singleton_ends, an endpoint set of one vertex (not in the other set)
// may start or end every path, so two single vertices get internally disjoint
// paths and a separator avoiding both; when they are adjacent, their edge is
// one of the paths and no vertex separator covers it.
DisjointPaths vertex_disjoint_paths(const Graph& g, const VertexSet& a,
                                    const VertexSet& b, std::size_t k,
                                    bool share_singleton_ends = true);

// Shortest path from any source to any target through allowed vertices;
// empty when none exists. Ties break toward smaller vertex ids.
Path shortest_path(const Graph& g, const VertexSet& sources, const VertexSet& targets,
                   const std::vector<char>* allowed_vertices = nullptr);

// Subgraph induced on s, vertices renumbered by rank within s; labels kept.
Graph induced_subgraph(const Graph& g, const VertexSet& s);

}  // namespace minex
