#include "minex/rays.hpp"

#include <algorithm>
#include <sstream>

#include "minex/error.hpp"

namespace minex {
namespace {

[[noreturn]] void too_small(const std::string& what) {
  throw Error(ErrorKind::kInsufficientRadius, what);
}

std::vector<std::int64_t> owners(std::size_t n, const std::vector<std::vector<Vertex>>& sets) {
  std::vector<std::int64_t> owner(n, -1);
  for (std::size_t k = 0; k < sets.size(); ++k) {
    for (Vertex v : sets[k]) owner[v] = static_cast<std::int64_t>(k);
  }
  return owner;
}

void require_path(const Graph& g, const Path& p, const std::string& what) {
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (!g.has_edge(p[i - 1], p[i])) fail(what + ": consecutive vertices are not adjacent");
  }
}

}  // namespace

std::string to_string(RemovalCase c) {
  switch (c) {
    case RemovalCase::kSingle:
      return "single";
    case RemovalCase::kDouble:
      return "double";
    case RemovalCase::kDetour:
      return "detour";
  }
  return "unknown";
}

RayContext make_ray_context(const GroupSpec& base, int radius, std::size_t cap) {
  RayContext ctx;
  ctx.base = base;
  ctx.enlarged = enlarged_generating_set(base);
  ctx.host = cayley_ball(base.term, base.gens, ctx.enlarged.gens, radius, cap);
  GraphBuilder b(ctx.host.elements.size());
  for (std::size_t v = 0; v < ctx.host.elements.size(); ++v) {
    for (const Element& s : base.gens) {
      if (auto u = ctx.host.find(multiply(base.term, s, ctx.host.elements[v])); u && *u != v) {
        b.add_edge(*u, static_cast<Vertex>(v));
      }
    }
  }
  ctx.base_graph = std::move(b).build();
  return ctx;
}

bool has_standard_rays(const GroupSpec& spec) {
  if (spec.term.kind() != GroupKind::kFreeAbelian || spec.term.rank() != 2) return false;
  const auto has = [&](std::int64_t x, std::int64_t y) {
    return std::find(spec.gens.begin(), spec.gens.end(), Element{{x, y}, {}, {}}) != spec.gens.end();
  };
  return has(0, 1) && has(1, 0);
}

std::vector<Path> standard_rays(const RayContext& ctx, int m) {
  require(m >= 1, "m must be at least 1");
  require(has_standard_rays(ctx.base), "built-in rays need Z^2 with (1,0) and (0,1) among the generators");
  std::vector<Path> rays;
  for (std::int64_t i = 1; i <= m; ++i) {
    Path ray;
    for (std::int64_t y = 1;; ++y) {
      auto v = ctx.host.find(Element{{i, y}, {}, {}});
      if (!v) break;
      ray.push_back(*v);
    }
    if (ray.empty()) too_small("ball of radius " + std::to_string(ctx.host.radius) + " is too narrow for " +
                               std::to_string(m) + " rays");
    rays.push_back(std::move(ray));
  }
  return rays;
}

MengerRays menger_rays(const Graph& g, int m, int R_core) {
  require(m >= 1, "m must be at least 1");
  require(g.num_vertices() > 0, "graph is empty");
  const Distances len = bfs_distances(g, 0);
  const int far = *std::max_element(len.begin(), len.end());
  std::vector<Vertex> sphere;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (len[v] == R_core) sphere.push_back(v);
  }
  MengerRays out;
  if (sphere.size() < static_cast<std::size_t>(m)) {
    out.separator = VertexSet(sphere);
    return out;
  }
  const VertexSet sources(std::vector<Vertex>(sphere.begin(), sphere.begin() + m));
  std::vector<Path> previous;
  for (int L = R_core + 1; L <= far; ++L) {
    std::vector<Vertex> target;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (len[v] == L) target.push_back(v);
    }
    DisjointPaths dp = vertex_disjoint_paths(g, sources, VertexSet(target), m, false);
    if (dp.separator) {
      out.separator = dp.separator;
      out.paths = std::move(dp.paths);
      out.reached_length = L;
      return out;
    }
    std::sort(dp.paths.begin(), dp.paths.end());
    if (!previous.empty()) {
      out.stable_prefix.assign(dp.paths.size(), 0);
      for (std::size_t i = 0; i < dp.paths.size(); ++i) {
        const auto& a = previous[i];
        const auto& b = dp.paths[i];
        out.stable_prefix[i] =
            std::mismatch(a.begin(), a.end(), b.begin(), b.end()).first - a.begin();
      }
    }
    previous = dp.paths;
    out.paths = std::move(dp.paths);
    out.reached_length = L;
  }
  if (out.paths.empty()) {
    // No sphere beyond the core: the sources themselves are trivial rays.
    for (Vertex v : sources) out.paths.push_back({v});
    out.reached_length = R_core;
  }
  return out;
}

RemovalCase remove_intersection(const Graph& host, Path& P, std::vector<Vertex>& seq, Path* L1_out) {
  std::vector<std::int64_t> pos_in_seq(host.num_vertices(), -1);
  for (std::size_t i = 0; i < seq.size(); ++i) pos_in_seq[seq[i]] = static_cast<std::int64_t>(i);

  std::int64_t a = -1, b = -1;
  for (std::size_t i = 0; i < P.size(); ++i) {
    if (pos_in_seq[P[i]] < 0) continue;
    if (a < 0) a = static_cast<std::int64_t>(i);
    b = static_cast<std::int64_t>(i);
  }
  require(a >= 0, "path does not meet the set");
  const std::int64_t from = pos_in_seq[P[a]], to = pos_in_seq[P[b]];
  const std::int64_t alpha = std::min(from, to), beta = std::max(from, to);

  std::vector<std::int64_t> steps;
  for (std::int64_t k = alpha; k <= beta; k += 2) steps.push_back(k);
  if (steps.back() != beta) steps.push_back(beta);
  if (from > to) std::reverse(steps.begin(), steps.end());
  Path L1;
  for (std::int64_t k : steps) L1.push_back(seq[k]);
  require_path(host, L1, "detour L1 leaves the host");

  Path rerouted(P.begin(), P.begin() + a);
  rerouted.insert(rerouted.end(), L1.begin(), L1.end());
  rerouted.insert(rerouted.end(), P.begin() + b + 1, P.end());
  P = std::move(rerouted);

  std::vector<char> drop(seq.size(), 0);
  for (std::int64_t k : steps) drop[k] = 1;
  std::vector<Vertex> kept;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (!drop[k]) kept.push_back(seq[k]);
  }
  seq = std::move(kept);
  if (L1_out) *L1_out = L1;

  if (beta == alpha) return RemovalCase::kSingle;
  if (beta == alpha + 1) return RemovalCase::kDouble;
  return RemovalCase::kDetour;
}

ConnectionState initial_state(const std::vector<Path>& rays) {
  ConnectionState state;
  for (const Path& r : rays) state.sets.push_back(r);
  return state;
}

void connect_pair(ConnectionState& state, const RayContext& ctx, std::size_t i, std::size_t j) {
  require(i != j, "cannot connect a set to itself");
  require(i < state.sets.size() && j < state.sets.size(), "set index out of range");
  const Graph& base = ctx.base_graph;
  const Graph& host = ctx.host.graph;
  const auto& len = ctx.host.length;
  const std::size_t n = base.num_vertices();
  const int rB = state.exclusion_radius;

  // Stand-in for the unbounded component: everything beyond the exclusion ball.
  std::vector<char> region(n, 0);
  std::vector<Vertex> region_list;
  for (Vertex v = 0; v < n; ++v) {
    if (len[v] > rB) {
      region[v] = 1;
      region_list.push_back(v);
    }
  }
  if (region_list.empty() || !is_connected_subset(base, VertexSet(region_list))) {
    too_small("the region beyond the exclusion radius " + std::to_string(rB) +
              " is empty or disconnected in the ball of radius " + std::to_string(ctx.host.radius));
  }
  auto beyond = [&](const std::vector<Vertex>& s) {
    std::vector<Vertex> out;
    for (Vertex v : s) {
      if (region[v]) out.push_back(v);
    }
    return VertexSet(std::move(out));
  };
  const VertexSet from = beyond(state.sets[i]), to = beyond(state.sets[j]);
  if (from.empty() || to.empty()) too_small("a ray has no vertex beyond the exclusion radius");

  Path P = shortest_path(base, from, to, &region);
  if (P.empty()) too_small("no path between the rays beyond the exclusion radius");

  Connection c;
  c.i = i;
  c.j = j;
  int touched = rB + 1;
  for (bool clean = false; !clean;) {
    clean = true;
    const auto owner = owners(n, state.sets);
    for (std::size_t pos = 1; pos + 1 < P.size(); ++pos) {
      const std::int64_t k = owner[P[pos]];
      if (k < 0 || k == static_cast<std::int64_t>(i) || k == static_cast<std::int64_t>(j)) continue;
      auto& seq = state.sets[k];
      Path L1;
      const RemovalCase kind = remove_intersection(host, P, seq, &L1);
      for (Vertex v : L1) touched = std::max(touched, len[v]);
      c.removals.push_back({kind, static_cast<std::size_t>(k), std::move(L1)});
      if (!is_connected_subset(host, VertexSet(seq))) {
        fail("internal error: set " + std::to_string(k) + " lost connectivity after a removal");
      }
      clean = false;
      break;
    }
  }
  // P is shortest from all of set i and to all of set j, so only its ends meet them.
  for (Vertex v : P) touched = std::max(touched, len[v]);
  for (std::size_t pos = 1; pos + 1 < P.size(); ++pos) state.sets[i].push_back(P[pos]);
  c.path = P;

  state.exclusion_radius = touched;
  c.exclusion_radius = touched;
  state.connections.push_back(std::move(c));

  for (std::size_t k = 0; k < state.sets.size(); ++k) {
    const bool survives = std::any_of(state.sets[k].begin(), state.sets[k].end(),
                                      [&](Vertex v) { return len[v] > touched; });
    if (!survives) {
      too_small("ray " + std::to_string(k + 1) + " has nothing left beyond exclusion radius " +
                std::to_string(touched) + "; the ball of radius " + std::to_string(ctx.host.radius) +
                " is too small");
    }
  }
}

RayBuild build_minor_from_rays(const GroupSpec& base, int m, int radius,
                               const std::optional<std::vector<std::vector<Element>>>& rays) {
  require(m >= 1, "m must be at least 1");
  require(radius >= 0, "radius must be nonnegative");
  RayBuild out;
  out.ctx = make_ray_context(base, radius);
  std::vector<Path> paths;
  if (rays) {
    require(rays->size() >= static_cast<std::size_t>(m), "ray file has fewer than m rays");
    for (std::size_t r = 0; r < static_cast<std::size_t>(m); ++r) {
      Path p;
      for (const Element& e : (*rays)[r]) {
        auto v = out.ctx.host.find(e);
        if (!v) break;  // truncated at the ball
        p.push_back(*v);
      }
      if (p.empty()) too_small("ray " + std::to_string(r + 1) + " starts outside the ball");
      require_path(out.ctx.base_graph, p, "ray " + std::to_string(r + 1));
      paths.push_back(std::move(p));
    }
    std::vector<Vertex> all;
    for (const Path& p : paths) all.insert(all.end(), p.begin(), p.end());
    std::sort(all.begin(), all.end());
    require(std::adjacent_find(all.begin(), all.end()) == all.end(), "rays are not pairwise disjoint");
  } else {
    require(has_standard_rays(base), "no built-in rays for this group; supply a ray file");
    paths = standard_rays(out.ctx, m);
  }

  out.state = initial_state(paths);
  for (std::size_t i = 0; i < static_cast<std::size_t>(m); ++i) {
    for (std::size_t j = i + 1; j < static_cast<std::size_t>(m); ++j) connect_pair(out.state, out.ctx, i, j);
  }
  out.decomposition.pattern = PatternGraph::complete(m);
  for (const auto& s : out.state.sets) out.decomposition.sets.emplace_back(s);
  out.verdict = verify_minor(out.ctx.host.graph, out.decomposition);
  return out;
}

std::vector<std::vector<Element>> parse_ray_file(const GroupTerm& g, const std::string& text) {
  std::vector<std::vector<Element>> rays;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') continue;
    std::vector<Element> ray;
    for (std::string_view word : split_top_level(line, ',')) ray.push_back(parse_element(g, word));
    rays.push_back(std::move(ray));
  }
  return rays;
}

}  // namespace minex
