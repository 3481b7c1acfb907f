#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "minex/graph.hpp"

namespace minex {

inline constexpr int kDefaultPartitionCap = 6;  // 4^6 = 4096 partitions

struct CutParams {
  int m = 1;
  int s = 0;
  std::vector<int> delta;            // m entries, each in {0, R, 2R, 3R}
  std::vector<Vertex> vertex_order;  // enumeration v_1, v_2, ...; empty means BFS order from 0
  bool j_from_one = false;           // annuli at 4Rj + delta for j >= 1 instead of j >= 0

  int R() const { return s + 3; }
};

// Level k works in the graph with F_1..F_{k-1} deleted.
struct CutLevel {
  std::vector<EdgeId> F;              // sorted edge ids
  std::vector<Vertex> root_of;        // smallest-index vertex of the vertex's component
  Distances depth;                    // d_C(v, root_of[v])
  Distances end_distance;             // distance to the ends of F in the same graph
  std::vector<char> removed;          // F_1..F_k as an edge mask
  std::vector<std::uint32_t> cluster; // components after deleting F_1..F_k
  std::size_t num_clusters = 0;
};

struct CutSequence {
  CutParams params;
  std::vector<std::shared_ptr<const CutLevel>> levels;
};

// Position of each vertex in params.vertex_order (BFS order from 0 when empty).
std::vector<std::uint32_t> order_rank(const Graph& host, const std::vector<Vertex>& vertex_order);

CutSequence build_cuts(const Graph& host, const CutParams& params);

struct Partition {
  std::vector<int> delta;
  std::vector<std::uint32_t> cluster_of;
  std::size_t num_clusters = 0;
  std::vector<char> removed;  // F_1 u ... u F_m as an edge mask
  // Vertex v belongs to U_T for its own cluster T. This mask is the cover
  // restricted to this partition.
  std::vector<char> in_cover;
};

Partition clusters_of(const Graph& host, const CutSequence& cuts);

// Erosion: v is kept iff it is at distance >= s+1 from the ends of every F_k,
// measured in the graph with F_1..F_{k-1} deleted.
void build_cover(const CutSequence& cuts, int s, Partition& partition);

struct PartitionOptions {
  int cap = kDefaultPartitionCap;
  int threads = 1;
  bool j_from_one = false;
};

// One partition per delta tuple, lexicographic in delta, cover attached.
std::vector<Partition> all_partitions(const Graph& host, int m, int s,
                                      const std::vector<Vertex>& vertex_order,
                                      const PartitionOptions& options = {});

// Index of a delta tuple in the lexicographic enumeration.
std::size_t partition_index(const std::vector<int>& delta, int R);

// Builds delta level by level choosing, at each level, the smallest delta
// with (d_C(w, root) - delta) mod 4R in [R, 3R].
std::vector<int> select_delta_for_vertex(const Graph& host, Vertex w, int m, int s,
                                         const std::vector<Vertex>& vertex_order,
                                         bool j_from_one = false);

// select_delta_for_vertex for every vertex at once, sharing cut levels.
std::vector<std::vector<int>> select_delta_all(const Graph& host, int m, int s,
                                               const std::vector<Vertex>& vertex_order,
                                               bool j_from_one = false);

// Closed balls B(x, s) for every x, as CSR rows.
struct BallIndex {
  std::vector<std::size_t> offsets;
  std::vector<Vertex> members;
  std::span<const Vertex> ball(Vertex x) const {
    return {members.data() + offsets[x], offsets[x + 1] - offsets[x]};
  }
};
BallIndex ball_index(const Graph& host, int s);

struct MultiplicityResult {
  std::size_t multiplicity = 0;
  Vertex witness = 0;
  std::size_t interior_multiplicity = 0;  // over vertices flagged interior
};

MultiplicityResult s_multiplicity(const std::vector<Partition>& cover, const BallIndex& balls,
                                  const std::vector<char>* interior = nullptr);

struct SeparationResult {
  bool passed = true;
  // First x with some y in B(x, s) lying in U_T for a cluster T not containing x.
  std::optional<Vertex> x;
  std::optional<Vertex> y;
  std::optional<std::size_t> partition;
  bool interior_passed = true;
};

SeparationResult separation_check(const std::vector<Partition>& cover, const BallIndex& balls,
                                  const std::vector<char>* interior = nullptr);

struct DiameterReport {
  std::uint32_t max_diameter = 0;
  double gamma_emp = 0;
  std::map<std::uint32_t, std::size_t> histogram;  // diameter -> nonempty element count
  std::size_t num_elements = 0;
  std::size_t num_nonempty = 0;
  // Per element, in partition order then cluster order.
  struct Row {
    std::size_t partition;
    std::uint32_t cluster;
    std::size_t cluster_size;
    std::size_t cover_size;
    std::optional<std::uint32_t> diameter;  // absent for empty elements
  };
  std::vector<Row> rows;
};

// Ambient-metric diameters of all cover elements.
DiameterReport cover_diameter_report(const Graph& host, const std::vector<Partition>& cover, int s,
                                     int threads = 1);

// Independent union-find recheck: clusters are exactly the components of the
// host minus the removed edges.
bool partition_property(const Graph& host, const Partition& p);

struct ScaleReport {
  int m = 0;
  int s = 0;
  int R = 0;
  std::size_t num_partitions = 0;
  std::size_t num_elements = 0;
  std::size_t num_nonempty_elements = 0;
  MultiplicityResult multiplicity;
  SeparationResult separation;
  bool coverage_pass = true;
  std::optional<Vertex> coverage_witness;
  bool partition_pass = true;
  std::optional<std::size_t> partition_witness;
  DiameterReport diameters;
  double interior_fraction = 1.0;

  bool passed() const;
};

struct NagataOptions {
  PartitionOptions partitions;
  std::vector<Vertex> vertex_order;
  // When set, the host is a ball of this radius around vertex 0 and a vertex
  // x counts as interior iff d(0, x) <= radius - s.
  std::optional<int> ball_radius;
  bool keep_rows = false;
};

std::vector<ScaleReport> nagata_witness(const Graph& host, int m, const std::vector<int>& s_list,
                                        const NagataOptions& options = {});

}  // namespace minex
