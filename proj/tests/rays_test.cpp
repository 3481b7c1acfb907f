#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "minex/error.hpp"
#include "minex/rays.hpp"

namespace minex {
namespace {

using testing::star_graph;
using testing::subset_connected;

const GroupSpec& z2() {
  static const GroupSpec spec = parse_group_spec("Z^2 | gens=auto");
  return spec;
}

Element pt(std::int64_t x, std::int64_t y) { return Element{{x, y}, {}, {}}; }

// Full rescan of the construction invariants after any step.
void expect_state_invariants(const ConnectionState& st, const RayContext& ctx) {
  const Graph& host = ctx.host.graph;
  std::vector<int> owner(host.num_vertices(), -1);
  for (std::size_t k = 0; k < st.sets.size(); ++k) {
    for (Vertex v : st.sets[k]) {
      EXPECT_EQ(owner[v], -1) << "sets overlap at " << v;
      owner[v] = static_cast<int>(k);
    }
    EXPECT_TRUE(subset_connected(host, st.sets[k])) << "set " << k;
  }
  for (const Connection& c : st.connections) {
    ASSERT_GE(c.path.size(), 2u);
    for (Vertex v : c.path) {
      const int o = owner[v];
      EXPECT_TRUE(o == static_cast<int>(c.i) || o == static_cast<int>(c.j));
    }
    for (std::size_t p = 0; p + 1 < c.path.size(); ++p) EXPECT_TRUE(ctx.base_graph.has_edge(c.path[p], c.path[p + 1]));
  }
}

TEST(StandardRays, VerticalColumns) {
  const RayContext ctx = make_ray_context(z2(), 10);
  const auto rays = standard_rays(ctx, 2);
  ASSERT_EQ(rays.size(), 2u);
  for (std::size_t r = 0; r < 2; ++r) {
    EXPECT_EQ(ctx.host.elements[rays[r].front()], pt(static_cast<std::int64_t>(r) + 1, 1));
    for (std::size_t k = 0; k + 1 < rays[r].size(); ++k) EXPECT_TRUE(ctx.base_graph.has_edge(rays[r][k], rays[r][k + 1]));
  }
  EXPECT_EQ(rays[0].size(), 9u);
  EXPECT_EQ(standard_rays(ctx, 1).size(), 1u);
}

TEST(StandardRays, Errors) {
  const RayContext ctx = make_ray_context(z2(), 4);
  try {
    standard_rays(ctx, 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInsufficientRadius);
  }
  const RayContext free_ctx = make_ray_context(parse_group_spec("F2"), 3);
  EXPECT_THROW(standard_rays(free_ctx, 2), Error);
}

TEST(MengerRays, GridBallFourPaths) {
  const CayleyBall ball = cayley_ball(z2(), 20);
  const MengerRays r = menger_rays(ball.graph, 4, 2);
  EXPECT_FALSE(r.separator);
  ASSERT_EQ(r.paths.size(), 4u);
  EXPECT_EQ(r.reached_length, 20);
  std::set<Vertex> used;
  for (const Path& p : r.paths) {
    EXPECT_EQ(ball.length[p.front()], 2);
    EXPECT_EQ(ball.length[p.back()], 20);
    for (Vertex v : p) EXPECT_TRUE(used.insert(v).second);
  }
}

TEST(MengerRays, SingleGeodesic) {
  const CayleyBall ball = cayley_ball(z2(), 6);
  const MengerRays r = menger_rays(ball.graph, 1, 0);
  ASSERT_EQ(r.paths.size(), 1u);
  EXPECT_EQ(r.paths[0].size(), 7u);
}

TEST(MengerRays, StarReportsSeparator) {
  const MengerRays core = menger_rays(star_graph(5), 2, 0);
  ASSERT_TRUE(core.separator);
  EXPECT_EQ(*core.separator, VertexSet{0});
  // A pendant path into a star: the sphere of radius 1 is the single hub.
  const Graph g = Graph::from_edges(4, {Edge(0, 1), Edge(1, 2), Edge(1, 3)});
  const MengerRays r = menger_rays(g, 2, 1);
  ASSERT_TRUE(r.separator);
  EXPECT_EQ(*r.separator, VertexSet{1});
}

TEST(RemoveIntersection, SingleCrossing) {
  const RayContext ctx = make_ray_context(z2(), 12);
  std::vector<Vertex> seq;
  for (int y = 1; y <= 8; ++y) seq.push_back(ctx.host.at(pt(3, y)));
  Path P{ctx.host.at(pt(2, 4)), ctx.host.at(pt(3, 4)), ctx.host.at(pt(4, 4))};
  const Path before = P;
  Path L1;
  EXPECT_EQ(remove_intersection(ctx.host.graph, P, seq, &L1), RemovalCase::kSingle);
  EXPECT_EQ(P, before);
  EXPECT_EQ(seq.size(), 7u);
  EXPECT_TRUE(subset_connected(ctx.host.graph, seq));
  EXPECT_FALSE(subset_connected(ctx.base_graph, seq));
}

TEST(RemoveIntersection, DoubleCrossing) {
  const RayContext ctx = make_ray_context(z2(), 12);
  std::vector<Vertex> seq;
  for (int y = 1; y <= 8; ++y) seq.push_back(ctx.host.at(pt(3, y)));
  Path P{ctx.host.at(pt(2, 4)), ctx.host.at(pt(3, 4)), ctx.host.at(pt(3, 5)), ctx.host.at(pt(4, 5))};
  EXPECT_EQ(remove_intersection(ctx.host.graph, P, seq), RemovalCase::kDouble);
  EXPECT_EQ(seq.size(), 6u);
  EXPECT_TRUE(subset_connected(ctx.host.graph, seq));
}

TEST(RemoveIntersection, DetourInterleavesTheColumn) {
  const RayContext ctx = make_ray_context(z2(), 14);
  std::vector<Vertex> seq;
  for (int y = 1; y <= 9; ++y) seq.push_back(ctx.host.at(pt(3, y)));
  // P enters the column at y=2 and leaves at y=5 after a wander to x=4.
  Path P{ctx.host.at(pt(2, 2)), ctx.host.at(pt(3, 2)), ctx.host.at(pt(4, 2)), ctx.host.at(pt(4, 3)),
         ctx.host.at(pt(4, 4)), ctx.host.at(pt(4, 5)), ctx.host.at(pt(3, 5)), ctx.host.at(pt(2, 5))};
  Path L1;
  EXPECT_EQ(remove_intersection(ctx.host.graph, P, seq, &L1), RemovalCase::kDetour);
  EXPECT_EQ(L1, (Path{ctx.host.at(pt(3, 2)), ctx.host.at(pt(3, 4)), ctx.host.at(pt(3, 5))}));
  EXPECT_EQ(P.front(), ctx.host.at(pt(2, 2)));
  EXPECT_EQ(P.back(), ctx.host.at(pt(2, 5)));
  for (std::size_t k = 0; k + 1 < P.size(); ++k) EXPECT_TRUE(ctx.host.graph.has_edge(P[k], P[k + 1]));
  const std::set<Vertex> rest(seq.begin(), seq.end());
  for (Vertex v : P) EXPECT_FALSE(rest.count(v));
  EXPECT_TRUE(subset_connected(ctx.host.graph, seq));
  EXPECT_TRUE(rest.count(ctx.host.at(pt(3, 3))));
}

TEST(RemoveIntersection, RandomCrossingsKeepSetConnectedAndDisjoint) {
  const RayContext ctx = make_ray_context(z2(), 16);
  for (int lo = 1; lo <= 6; ++lo) {
    for (int hi = lo; hi <= lo + 6; ++hi) {
      std::vector<Vertex> seq;
      for (int y = 1; y <= 14; ++y) seq.push_back(ctx.host.at(pt(0, y)));
      std::vector<Vertex> other;
      for (int y = 1; y <= 14; ++y) other.push_back(ctx.host.at(pt(-2, y)));
      Path P{ctx.host.at(pt(-1, lo)), ctx.host.at(pt(0, lo))};
      if (hi == lo) {
        P.push_back(ctx.host.at(pt(1, lo)));
      } else {
        for (int y = lo; y <= hi; ++y) P.push_back(ctx.host.at(pt(1, y)));
        P.push_back(ctx.host.at(pt(0, hi)));
        P.push_back(ctx.host.at(pt(-1, hi)));
      }
      remove_intersection(ctx.host.graph, P, seq);
      EXPECT_TRUE(subset_connected(ctx.host.graph, seq)) << lo << " " << hi;
      const std::set<Vertex> s(seq.begin(), seq.end());
      for (Vertex v : P) {
        EXPECT_FALSE(s.count(v));
        EXPECT_EQ(std::count(other.begin(), other.end(), v), 0);
      }
    }
  }
}

TEST(RemoveIntersection, RejectsDisjointPath) {
  const RayContext ctx = make_ray_context(z2(), 6);
  std::vector<Vertex> seq{ctx.host.at(pt(3, 1))};
  Path P{ctx.host.at(pt(0, 1))};
  EXPECT_THROW(remove_intersection(ctx.host.graph, P, seq), Error);
}

TEST(ConnectPair, SinglePairNeedsNoRemovals) {
  const RayContext ctx = make_ray_context(z2(), 15);
  ConnectionState st = initial_state(standard_rays(ctx, 2));
  connect_pair(st, ctx, 0, 1);
  ASSERT_EQ(st.connections.size(), 1u);
  EXPECT_TRUE(st.connections[0].removals.empty());
  expect_state_invariants(st, ctx);
  EXPECT_THROW(connect_pair(st, ctx, 1, 1), Error);
}

TEST(ConnectPair, LaterConnectionsStayOutsideTheExclusionBall) {
  const RayContext ctx = make_ray_context(z2(), 30);
  ConnectionState st = initial_state(standard_rays(ctx, 4));
  int previous = st.exclusion_radius;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const std::vector<Connection> before = st.connections;
      connect_pair(st, ctx, i, j);
      EXPECT_GT(st.exclusion_radius, previous);
      previous = st.exclusion_radius;
      for (std::size_t c = 0; c < before.size(); ++c) EXPECT_EQ(st.connections[c].path, before[c].path);
      for (const Connection& c : st.connections) {
        for (Vertex v : c.path) EXPECT_LE(ctx.host.length[v], st.exclusion_radius);
      }
      for (Vertex v : st.connections.back().path) EXPECT_GT(ctx.host.length[v], before.empty() ? 0 : before.back().exclusion_radius);
      expect_state_invariants(st, ctx);
    }
  }
}

TEST(Build, KTwoThreeFour) {
  for (int m : {2, 3, 4}) {
    const RayBuild b = build_minor_from_rays(z2(), m, m == 4 ? 60 : 40);
    EXPECT_TRUE(b.verdict.passed()) << m;
    EXPECT_EQ(b.state.connections.size(), static_cast<std::size_t>(m * (m - 1) / 2));
    EXPECT_EQ(b.ctx.enlarged.gens.size(), 24u);
    expect_state_invariants(b.state, b.ctx);
  }
}

TEST(Build, RemovalsHappenForFourRays) {
  const RayBuild b = build_minor_from_rays(z2(), 4, 40);
  std::size_t removals = 0;
  for (const Connection& c : b.state.connections) removals += c.removals.size();
  EXPECT_GT(removals, 0u);
}

TEST(Build, TooSmallBallAndUnsupportedSpec) {
  try {
    build_minor_from_rays(z2(), 2, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInsufficientRadius);
  }
  try {
    build_minor_from_rays(parse_group_spec("F2"), 2, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidArgument);
  }
}

TEST(Build, RayFileForAnotherGenerators) {
  // Z^2 with S2 generators has no built-in rays; feed columns explicitly.
  const GroupSpec spec = parse_group_spec("Z^2 | gens=(1,0),(2,0),(0,1),sym");
  std::string text = "# two columns\n";
  for (int x : {1, 2, 3}) {
    for (int y = 1; y <= 30; ++y) text += (y > 1 ? "," : "") + std::string("(") + std::to_string(x) + "," + std::to_string(y) + ")";
    text += "\n";
  }
  const auto rays = parse_ray_file(spec.term, text);
  ASSERT_EQ(rays.size(), 3u);
  const RayBuild b = build_minor_from_rays(spec, 3, 24, rays);
  EXPECT_TRUE(b.verdict.passed());
  EXPECT_EQ(b.state.connections.size(), 3u);
}

TEST(Build, MengerRaysAsSource) {
  const RayContext ctx = make_ray_context(z2(), 30);
  const MengerRays mr = menger_rays(ctx.base_graph, 3, 3);
  ASSERT_FALSE(mr.separator);
  std::vector<std::vector<Element>> rays;
  for (const Path& p : mr.paths) {
    rays.emplace_back();
    for (Vertex v : p) rays.back().push_back(ctx.host.elements[v]);
  }
  const RayBuild b = build_minor_from_rays(z2(), 3, 30, rays);
  EXPECT_TRUE(b.verdict.passed());
}

}  // namespace
}  // namespace minex
