#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minex/group.hpp"
#include "minex/minor.hpp"

namespace minex {

// One ball, two edge sets: base_graph uses S0, host uses S = S0 u S0S0 u S0S0S0.
// Both share vertex ids and the S0 word length.
struct RayContext {
  GroupSpec base;
  GroupSpec enlarged;
  CayleyBall host;
  Graph base_graph;
};

RayContext make_ray_context(const GroupSpec& base, int radius, std::size_t cap = kDefaultBallCap);

// Vertical rays {(i,1), (i,2), ...} for i = 1..m in Z^2; the generating set
// must contain (0,1) and (1,0).
std::vector<Path> standard_rays(const RayContext& ctx, int m);

struct MengerRays {
  std::vector<Path> paths;  // sorted by start vertex, each from the R_core sphere outward
  std::optional<VertexSet> separator;  // set when fewer than m disjoint paths exist
  int reached_length = 0;
  // Per path, how many leading vertices agreed between the last two target lengths.
  std::vector<std::size_t> stable_prefix;
};

// Disjoint paths from the first m vertices of the sphere of radius R_core
// around vertex 0 to spheres of growing radius, up to the farthest sphere.
MengerRays menger_rays(const Graph& g, int m, int R_core);

enum class RemovalCase { kSingle, kDouble, kDetour };
std::string to_string(RemovalCase c);

struct Removal {
  RemovalCase kind;
  std::size_t set;
  Path L1;
};

// P meets the ordered set seq. Let a, b be the first and last positions of P
// in seq and alpha <= beta their positions in seq. L1 walks seq from alpha
// to beta in steps of two, ending with a single step when beta - alpha is
// odd. P' = P[..a) + L1 + P(b..] (oriented), seq' = seq minus L1.
RemovalCase remove_intersection(const Graph& host, Path& P, std::vector<Vertex>& seq, Path* L1 = nullptr);

struct Connection {
  std::size_t i = 0;
  std::size_t j = 0;
  Path path;  // first vertex in set i, last in set j
  std::vector<Removal> removals;
  int exclusion_radius = 0;  // r_B after this connection
};

struct ConnectionState {
  std::vector<std::vector<Vertex>> sets;  // ordered, origin first
  std::vector<Connection> connections;
  int exclusion_radius = 0;
};

ConnectionState initial_state(const std::vector<Path>& rays);

// Routes a path between sets i and j outside the exclusion ball, clears its
// intersections with other sets, absorbs its interior into set i and grows
// the exclusion radius past everything touched. Throws kInsufficientRadius
// when the ball is too small.
void connect_pair(ConnectionState& state, const RayContext& ctx, std::size_t i, std::size_t j);

struct RayBuild {
  RayContext ctx;
  ConnectionState state;
  BranchDecomposition decomposition;  // over ctx.host.graph
  MinorVerdict verdict;
};

// rays, when given, must be paths in Cay(G, S0); otherwise the spec needs
// built-in rays.
RayBuild build_minor_from_rays(const GroupSpec& base, int m, int radius,
                               const std::optional<std::vector<std::vector<Element>>>& rays = std::nullopt);

// Whether the spec has built-in rays.
bool has_standard_rays(const GroupSpec& spec);

// Parses one ray per nonempty line, comma-separated element words.
std::vector<std::vector<Element>> parse_ray_file(const GroupTerm& g, const std::string& text);

}  // namespace minex
