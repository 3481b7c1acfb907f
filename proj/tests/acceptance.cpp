// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "minex/collapse.hpp"
#include "minex/constructions.hpp"
#include "minex/free_product.hpp"
#include "minex/kpr.hpp"
#include "minex/rays.hpp"
#include "minex/virtually_free.hpp"

namespace {

using namespace minex;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string summary;  // what was measured, printed on PASS too

  void check(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome explicit_constructions() {
  Outcome o;
  for (int m = 1; m <= 10; ++m) {
    const MinorInstance inst = construct_z2_s2_minor(m);
    o.check(inst.ball.radius == 3 * m + 2, "z2s2 radius m=" + std::to_string(m));
    o.check(verify_minor(inst.ball.graph, inst.decomposition).passed(), "z2s2 m=" + std::to_string(m));
  }
  for (int order : {2, 3, 0}) {
    const GroupSpec spec = z2xc_spec(order);
    for (int m = 1; m <= 8; ++m) {
      const MinorInstance inst = construct_z2xc_minor(m, spec, parse_element(spec.term, "(1,0,0)"),
                                                      parse_element(spec.term, "(0,1,0)"), parse_element(spec.term, "(0,0,1)"));
      o.check(verify_minor(inst.ball.graph, inst.decomposition).passed(),
              "z2xc C=" + std::to_string(order) + " m=" + std::to_string(m));
    }
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(1, 8);
  std::uniform_real_distribution<double> density(0.1, 0.9);
  std::size_t positives[2] = {0, 0};
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = static_cast<std::size_t>(size(rng));
    const double p = density(rng);
    std::vector<Edge> edges;
    std::bernoulli_distribution coin(p);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (coin(rng)) edges.emplace_back(u, v);
    const Graph g = Graph::from_edges(n, edges);
    for (std::size_t m : {3u, 4u}) {
      CliqueSearchOptions opt;
      opt.budget = 1'000'000;
      opt.seed = static_cast<std::uint64_t>(trial);
      const bool found = find_clique_minor(g, m, opt).decomposition.has_value();
      const bool truth = brute_force_minor_oracle(g, PatternGraph::complete(m));
      o.check(found == truth, "trial " + std::to_string(trial) + " K" + std::to_string(m));
      positives[m - 3] += truth ? 1 : 0;
    }
  }
  o.summary = "K3 present in " + std::to_string(positives[0]) + "/500, K4 in " + std::to_string(positives[1]) + "/500";
  return o;
}

Outcome kpr_suite() {
  Outcome o;
  const int radius = 40, m = 5;
  const CayleyBall ball = cayley_ball(parse_group_spec("Z^2 | gens=(1,0),(0,1),sym"), radius);
  const Graph& g = ball.graph;
  const Distances from_origin = bfs_distances(g, 0);
  for (int s : {1, 2, 3}) {
    const std::string tag = " s=" + std::to_string(s);
    PartitionOptions popt;
    popt.cap = m;
    popt.threads = 4;
    const std::vector<Partition> parts = all_partitions(g, m, s, {}, popt);
    o.check(parts.size() == 1024, "partition count" + tag);

    // (a) coverage on interior vertices.
    const auto deltas = select_delta_all(g, m, s, {});
    const int R = s + 3;
    std::size_t interior = 0;
    for (Vertex w = 0; w < g.num_vertices(); ++w) {
      if (from_origin[w] > radius - s) continue;
      ++interior;
      const Partition& p = parts[partition_index(deltas[w], R)];
      o.check(p.in_cover[w] != 0, "coverage at vertex " + std::to_string(w) + tag);
    }

    // (b) multiplicity and (c) separation.
    const BallIndex balls = ball_index(g, s);
    const MultiplicityResult mult = s_multiplicity(parts, balls);
    o.check(mult.multiplicity <= 1024, "multiplicity" + tag);
    o.summary += (o.summary.empty() ? "" : "; ") + std::string("s=") + std::to_string(s) + ": " +
                 std::to_string(interior) + " interior vertices covered, multiplicity " +
                 std::to_string(mult.multiplicity);
    o.check(separation_check(parts, balls).passed, "separation" + tag);

    // (d) partition property for every tuple.
    for (const Partition& p : parts) o.check(partition_property(g, p), "partition property" + tag);
  }
  return o;
}

Outcome tree_control() {
  Outcome o;
  const CayleyBall ball = cayley_ball(parse_group_spec("F2"), 6);
  const Graph& g = ball.graph;
  o.check(g.num_edges() + 1 == g.num_vertices() && connected_components(g).size() == 1, "ball is not a tree");
  for (std::uint64_t budget : {10ull, 1'000ull, 100'000ull, 10'000'000ull}) {
    CliqueSearchOptions opt;
    opt.budget = budget;
    o.check(!find_clique_minor(g, 3, opt).decomposition, "K3 reported at budget " + std::to_string(budget));
  }
  // Connected 12-vertex subtrees: BFS prefixes from several roots and random growth.
  std::mt19937_64 rng(6);
  std::vector<std::vector<Vertex>> samples;
  for (Vertex root : {Vertex{0}, Vertex{1}, Vertex{7}, Vertex{40}}) {
    auto order = bfs_order(g, root);
    order.resize(kOracleMaxVertices);
    samples.push_back(order);
  }
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(g.num_vertices() - 1));
  for (int i = 0; i < 30; ++i) {
    std::vector<Vertex> set{pick(rng)};
    std::set<Vertex> in(set.begin(), set.end());
    while (set.size() < kOracleMaxVertices) {
      const Vertex v = set[std::uniform_int_distribution<std::size_t>(0, set.size() - 1)(rng)];
      const auto nb = g.neighbors(v);
      const Vertex w = nb[std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng)];
      if (in.insert(w).second) set.push_back(w);
    }
    samples.push_back(set);
  }
  for (const auto& s : samples) {
    const Graph sub = induced_subgraph(g, VertexSet(s));
    o.check(!brute_force_minor_oracle(sub, PatternGraph::complete(3)), "oracle found K3 in a subtree");
  }
  return o;
}

Outcome ray_builder() {
  Outcome o;
  const GroupSpec z2 = parse_group_spec("Z^2 | gens=(1,0),(0,1),sym");
  for (int m : {2, 3, 4}) {
    const std::string tag = " m=" + std::to_string(m);
    const RayBuild b = build_minor_from_rays(z2, m, 40);
    o.check(b.ctx.enlarged.gens.size() == 24, "enlarged generating set size" + tag);
    o.check(verify_minor(b.ctx.host.graph, b.decomposition).passed(), "verify" + tag);
    o.check(b.decomposition.pattern.size() == static_cast<std::size_t>(m) &&
                b.decomposition.pattern.edges().size() == static_cast<std::size_t>(m * (m - 1) / 2),
            "pattern" + tag);
    o.check(b.state.connections.size() == static_cast<std::size_t>(m * (m - 1) / 2), "connections" + tag);
  }
  return o;
}

Outcome free_product_round_trip() {
  Outcome o;
  const GroupSpec host = parse_group_spec("Z^2 * C2 | gens=g:(1,0),g:(2,0),g:(0,1),h:(1),sym");
  // About 1.2e7 vertices, above the default cap.
  const CayleyBall ball = cayley_ball(host, 12, 20'000'000);
  const MinorInstance inst = construct_z2_s2_minor(4);
  const Element t = parse_element(host.term, "h:(1)");
  BranchDecomposition planted;
  planted.pattern = inst.decomposition.pattern;
  for (const auto& set : inst.element_sets) {
    std::vector<Vertex> ids;
    for (const Element& x : set) {
      const auto id = ball.find(multiply(host.term, embed_left(host.term, x), t));
      o.check(id.has_value(), "planted element outside the ball");
      if (id) ids.push_back(*id);
    }
    planted.sets.emplace_back(ids);
  }
  o.check(verify_minor(ball.graph, planted).passed(), "planted decomposition");
  const ProjectionResult r = project_free_product_minor(host, ball, planted);
  o.check(r.side == 0 && r.coset_tail == t, "coset");
  const CayleyBall s2 = cayley_ball(z2_s2_spec(), r.factor_ball.radius);
  o.check(verify_minor(s2.graph, r.decomposition).passed(), "projected decomposition");
  std::set<std::string> got, want;
  for (const VertexSet& s : r.decomposition.sets)
    for (Vertex v : s) got.insert(format_element(inst.spec.term, s2.elements[v]));
  for (const auto& s : inst.element_sets)
    for (const Element& x : s) want.insert(format_element(inst.spec.term, x));
  o.check(got == want, "projected elements");
  o.summary = "host ball " + std::to_string(ball.graph.num_vertices()) + " vertices, " + std::to_string(got.size()) +
              " projected elements";
  return o;
}

Outcome collapse_sanity() {
  Outcome o;
  const CayleyBall ball = cayley_ball(parse_group_spec("Z"), 9);
  std::vector<std::uint64_t> pairs;
  for (const Element& e : ball.elements) {
    const std::int64_t x = e.word[0];
    pairs.push_back(static_cast<std::uint64_t>((x >= 0 ? x / 2 : (x - 1) / 2) + 100));
  }
  const Collapse c = babai_collapse(ball.graph, pairs);
  // Classes h = -5..4; the isomorphism onto the interval [-5, 4] of Cay(Z) sends class h to h.
  o.check(c.quotient.num_vertices() == 10, "quotient size");
  std::vector<std::int64_t> h(c.quotient.num_vertices());
  for (Vertex q = 0; q < c.quotient.num_vertices(); ++q) h[q] = static_cast<std::int64_t>(pairs[c.classes[q].front()]) - 100;
  const CayleyBall z5 = cayley_ball(parse_group_spec("Z"), 5);
  std::set<std::pair<std::int64_t, std::int64_t>> image, interval;
  for (const Edge& e : c.quotient.edges()) image.insert(std::minmax(h[e.u], h[e.v]));
  for (const Edge& e : z5.graph.edges()) {
    const std::int64_t a = z5.elements[e.u].word[0], b = z5.elements[e.v].word[0];
    if (std::max(a, b) <= 4) interval.insert(std::minmax(a, b));
  }
  o.check(image == interval, "quotient is not the interval path");
  o.check(std::set<std::int64_t>(h.begin(), h.end()).size() == h.size(), "class labels collide");

  std::vector<std::uint64_t> singles(ball.graph.num_vertices());
  for (Vertex v = 0; v < singles.size(); ++v) singles[v] = v;
  const Collapse id = babai_collapse(ball.graph, singles);
  o.check(id.quotient.num_vertices() == ball.graph.num_vertices() && id.quotient.edges() == ball.graph.edges(),
          "identity collapse");
  return o;
}

Outcome virtually_free_bounds() {
  Outcome o;
  const GroupSpec z = parse_group_spec("F1");
  const auto bz = virtually_free_bound(z, {parse_element(z.term, "x1")}, {parse_element(z.term, "e")}, 4);
  o.check(bz.k == 1 && bz.M == 1, "Z bound");

  const GroupSpec d = parse_group_spec("C2 * C2");
  const auto bd = virtually_free_bound(d, {parse_element(d.term, "g:(1)*h:(1)")},
                                       {parse_element(d.term, "e"), parse_element(d.term, "g:(1)")}, 4);
  o.check(bd.k == 2 && bd.M == 1, "infinite dihedral bound");

  const GroupSpec zc = parse_group_spec("Z x C3");
  const CayleyBall ball = cayley_ball(zc, 5);
  const auto found = find_clique_minor(ball.graph, 4);
  o.check(found.decomposition.has_value(), "no K4 to audit");
  if (!found.decomposition) return o;
  CosetFactorizer f(zc.term, {parse_element(zc.term, "(1,0)")},
                    {parse_element(zc.term, "(0,0)"), parse_element(zc.term, "(0,1)"), parse_element(zc.term, "(0,2)")});
  std::size_t probed = 0;
  for (const TreeEdge& e : tree_edges(1, 5)) {
    const CrossingAudit a = crossing_audit(f, ball, e, *found.decomposition);
    o.check(a.consistent() && a.crossing_edges >= a.R_e + a.kA * a.kB, "audit inconsistent");
    ++probed;
  }
  o.check(probed == 10, "probed edges");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;  // 0: no limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "explicit constructions", 10, explicit_constructions},
      {2, "search agrees with oracle", 60, oracle_equivalence},
      {3, "cut/partition/cover suite", 300, kpr_suite},
      {4, "tree negative control", 0, tree_control},
      {5, "ray builder", 60, ray_builder},
      {6, "free product round trip", 0, free_product_round_trip},
      {7, "collapse sanity", 0, collapse_sanity},
      {8, "virtually free bounds", 0, virtually_free_bounds},
  };
  bool all = true;
  for (const Criterion& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = seconds_since(t0);
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.check(false, "over time limit");
    }
    all = all && o.pass;
    std::printf("%s criterion %d (%s) %.2fs%s%s%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.empty() ? "" : ": ", o.detail.c_str(), o.summary.empty() ? "" : " | ",
                o.summary.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
