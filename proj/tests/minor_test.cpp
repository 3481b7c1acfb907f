#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "minex/error.hpp"
#include "minex/group.hpp"
#include "minex/minor.hpp"

namespace minex {
namespace {

using testing::complete_graph;
using testing::cycle_graph;
using testing::grid_graph;
using testing::path_graph;
using testing::random_graph;
using testing::subset_connected;

BranchDecomposition complete_bd(std::vector<VertexSet> sets) {
  BranchDecomposition bd;
  bd.pattern = PatternGraph::complete(sets.size());
  bd.sets = std::move(sets);
  return bd;
}

// Re-derives the three minor conditions directly from the edge list.
bool independent_check(const Graph& host, const BranchDecomposition& bd) {
  std::vector<int> owner(host.num_vertices(), -1);
  for (std::size_t i = 0; i < bd.sets.size(); ++i) {
    for (Vertex v : bd.sets[i]) {
      if (v >= host.num_vertices() || owner[v] >= 0) return false;
      owner[v] = static_cast<int>(i);
    }
    if (!subset_connected(host, bd.sets[i].members())) return false;
  }
  for (const Edge& pe : bd.pattern.edges()) {
    bool realized = false;
    for (const Edge& e : host.edges()) {
      const int a = owner[e.u], b = owner[e.v];
      realized = realized || (a == static_cast<int>(pe.u) && b == static_cast<int>(pe.v)) ||
                 (a == static_cast<int>(pe.v) && b == static_cast<int>(pe.u));
    }
    if (!realized) return false;
  }
  return true;
}

TEST(Verify, ThreeSetsOnTheS2Grid) {
  const GroupSpec s2 = parse_group_spec("Z^2 | gens=(1,0),(2,0),(0,1),sym");
  const CayleyBall ball = cayley_ball(s2, 10);
  auto ids = [&](std::initializer_list<const char*> labels) {
    std::vector<Vertex> out;
    for (const char* l : labels) out.push_back(ball.at(parse_element(s2.term, l)));
    return VertexSet(out);
  };
  const BranchDecomposition bd = complete_bd({ids({"(2,1)", "(4,1)", "(6,1)"}),
                                              ids({"(3,1)", "(3,2)", "(4,2)", "(6,2)"}),
                                              ids({"(5,1)", "(5,2)", "(5,3)", "(6,3)"})});
  EXPECT_TRUE(verify_minor(ball.graph, bd).passed());
  EXPECT_TRUE(is_connected_subset(ball.graph, ids({"(2,1)", "(4,1)", "(6,1)"})));
}

TEST(Verify, DuplicateVertexFailsDisjointness) {
  const Graph g = complete_graph(4);
  const MinorVerdict v = verify_minor(g, complete_bd({VertexSet{0, 1}, VertexSet{1, 2}}));
  EXPECT_FALSE(v.disjoint);
  EXPECT_FALSE(v.passed());
  ASSERT_TRUE(v.overlap_vertex);
  EXPECT_EQ(*v.overlap_vertex, 1u);
}

TEST(Verify, MissingEdgeFailsRealization) {
  const Graph g = path_graph(3);
  const MinorVerdict v = verify_minor(g, complete_bd({VertexSet{0}, VertexSet{1}, VertexSet{2}}));
  EXPECT_TRUE(v.disjoint);
  EXPECT_TRUE(v.connected);
  EXPECT_FALSE(v.edges_realized);
  ASSERT_TRUE(v.missing_pattern_edge);
  EXPECT_EQ(*v.missing_pattern_edge, Edge(0, 2));
}

TEST(Verify, DisconnectedAndEmptySets) {
  const Graph g = path_graph(4);
  MinorVerdict v = verify_minor(g, complete_bd({VertexSet{0, 2}, VertexSet{1}}));
  EXPECT_FALSE(v.connected);
  EXPECT_EQ(*v.disconnected_set, 0u);
  v = verify_minor(g, complete_bd({VertexSet{}, VertexSet{1}}));
  EXPECT_FALSE(v.connected);
}

TEST(Verify, ShapeMismatch) {
  BranchDecomposition bd = complete_bd({VertexSet{0}, VertexSet{1}});
  bd.pattern = PatternGraph::complete(3);
  EXPECT_FALSE(verify_minor(path_graph(3), bd).shape_ok);
  EXPECT_FALSE(verify_minor(path_graph(3), complete_bd({VertexSet{0}, VertexSet{7}})).shape_ok);
}

TEST(Oracle, Examples) {
  EXPECT_TRUE(brute_force_minor_oracle(cycle_graph(4), PatternGraph::complete(3)));
  EXPECT_FALSE(brute_force_minor_oracle(path_graph(7), PatternGraph::complete(3)));
  EXPECT_TRUE(brute_force_minor_oracle(complete_graph(4), PatternGraph::complete(4)));
  EXPECT_FALSE(brute_force_minor_oracle(cycle_graph(8), PatternGraph::complete(4)));
  EXPECT_TRUE(brute_force_minor_oracle(grid_graph(3, 3), PatternGraph::complete(4)));
  EXPECT_THROW(brute_force_minor_oracle(path_graph(13), PatternGraph::complete(2)), Error);
}

TEST(Oracle, CustomPattern) {
  // A 4-cycle pattern is a minor of the 3x3 grid but not of a tree.
  const PatternGraph c4(4, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3)});
  EXPECT_TRUE(brute_force_minor_oracle(grid_graph(3, 3), c4));
  EXPECT_FALSE(brute_force_minor_oracle(path_graph(6), c4));
}

TEST(CutVertex, Examples) {
  EXPECT_TRUE(has_cut_vertex(PatternGraph(3, {Edge(0, 1), Edge(1, 2)})));
  EXPECT_FALSE(has_cut_vertex(PatternGraph::complete(4)));
  const PatternGraph bowtie(5, {Edge(0, 1), Edge(1, 2), Edge(0, 2), Edge(2, 3), Edge(3, 4), Edge(2, 4)});
  EXPECT_TRUE(has_cut_vertex(bowtie));
  EXPECT_THROW(has_cut_vertex(PatternGraph(3, {Edge(0, 1)})), Error);
}

TEST(Search, TrivialCliques) {
  const Graph g = grid_graph(3, 3);
  auto r = find_clique_minor(g, 1);
  ASSERT_TRUE(r.decomposition);
  EXPECT_EQ(r.decomposition->sets.size(), 1u);
  EXPECT_EQ(r.decomposition->sets[0].size(), 1u);
  r = find_clique_minor(g, 2);
  ASSERT_TRUE(r.decomposition);
  EXPECT_TRUE(verify_minor(g, *r.decomposition).passed());
}

TEST(Search, GridHasK4) {
  const Graph g = grid_graph(3, 3);
  const auto r = find_clique_minor(g, 4);
  ASSERT_TRUE(r.decomposition);
  EXPECT_TRUE(independent_check(g, *r.decomposition));
  EXPECT_TRUE(brute_force_minor_oracle(g, PatternGraph::complete(4)));
}

TEST(Search, TreeHasNoTriangleAtAnyBudget) {
  const CayleyBall tree = cayley_ball(parse_group_spec("F2"), 4);
  for (std::uint64_t budget : {10ull, 1000ull, 1000000ull}) {
    CliqueSearchOptions opt;
    opt.budget = budget;
    const auto r = find_clique_minor(tree.graph, 3, opt);
    EXPECT_FALSE(r.decomposition);
    EXPECT_TRUE(r.exhaustive);
  }
}

TEST(Search, DeterministicUnderSeed) {
  std::mt19937_64 rng(5);
  const Graph g = random_graph(30, 0.15, rng);
  CliqueSearchOptions opt;
  opt.seed = 99;
  const auto a = find_clique_minor(g, 4, opt);
  const auto b = find_clique_minor(g, 4, opt);
  ASSERT_EQ(a.decomposition.has_value(), b.decomposition.has_value());
  if (a.decomposition) {
    EXPECT_EQ(a.decomposition->sets, b.decomposition->sets);
  }
  EXPECT_EQ(a.expansions, b.expansions);
}

TEST(Search, AgreesWithOracleOnSmallRandomGraphs) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(1, 8);
  std::uniform_real_distribution<double> density(0.15, 0.8);
  for (int trial = 0; trial < 150; ++trial) {
    const Graph g = random_graph(size(rng), density(rng), rng);
    for (std::size_t m : {3u, 4u}) {
      const auto r = find_clique_minor(g, m);
      EXPECT_EQ(r.decomposition.has_value(), brute_force_minor_oracle(g, PatternGraph::complete(m)));
      if (r.decomposition) {
        EXPECT_TRUE(independent_check(g, *r.decomposition));
      }
    }
  }
}

TEST(Search, WitnessesAreVerifiedAndMonotone) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_graph(40, 0.12, rng);
    for (std::size_t m = 3; m <= 5; ++m) {
      const auto r = find_clique_minor(g, m);
      if (!r.decomposition) continue;
      EXPECT_TRUE(independent_check(g, *r.decomposition));
      // Dropping the last set leaves a K_{m-1} witness.
      BranchDecomposition smaller;
      smaller.pattern = PatternGraph::complete(m - 1);
      smaller.sets.assign(r.decomposition->sets.begin(), r.decomposition->sets.end() - 1);
      EXPECT_TRUE(verify_minor(g, smaller).passed());
      EXPECT_TRUE(find_clique_minor(g, m - 1).decomposition.has_value());
    }
  }
}

TEST(Search, LargerCliquesInDenseHosts) {
  const Graph k6 = complete_graph(6);
  ASSERT_TRUE(find_clique_minor(k6, 6).decomposition);
  EXPECT_FALSE(find_clique_minor(k6, 7).decomposition);
  const auto r = find_clique_minor(grid_graph(6, 6), 5);
  // A planar grid never has K5.
  EXPECT_FALSE(r.decomposition);
}

}  // namespace
}  // namespace minex
