#include "minex/kpr.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "minex/error.hpp"

namespace minex {
namespace {

using LevelPtr = std::shared_ptr<const CutLevel>;

void validate_delta(int delta, int R) {
  require(delta >= 0 && delta <= 3 * R && delta % R == 0,
          "delta must be one of 0, R, 2R, 3R (R = " + std::to_string(R) + ")");
}

// Runs fn(0..count-1) on up to `threads` workers.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

class LevelBuilder {
 public:
  LevelBuilder(const Graph& g, const std::vector<Vertex>& vertex_order, int R, bool j_from_one)
      : g_(g), rank_(order_rank(g, vertex_order)), R_(R), j_from_one_(j_from_one) {
    auto base = std::make_shared<CutLevel>();
    base->removed.assign(g.num_edges(), 0);
    base->cluster = component_labels(g, nullptr, &base->num_clusters);
    base_ = std::move(base);
  }

  const LevelPtr& base() const { return base_; }

  // Roots and depths of the graph in which the next level is cut.
  void frame(const CutLevel& prev, std::vector<Vertex>& root_of, Distances& depth) const {
    std::vector<Vertex> root(prev.num_clusters, 0);
    std::vector<std::uint32_t> best(prev.num_clusters, UINT32_MAX);
    for (Vertex v = 0; v < g_.num_vertices(); ++v) {
      const auto c = prev.cluster[v];
      if (rank_[v] < best[c]) {
        best[c] = rank_[v];
        root[c] = v;
      }
    }
    root_of.resize(g_.num_vertices());
    for (Vertex v = 0; v < g_.num_vertices(); ++v) root_of[v] = root[prev.cluster[v]];
    depth = bfs_distances(g_, root, BfsOptions{&prev.removed, nullptr, -1});
  }

  LevelPtr cut(const CutLevel& prev, std::vector<Vertex> root_of, Distances depth, int delta) const {
    validate_delta(delta, R_);
    auto level = std::make_shared<CutLevel>();
    const std::int32_t period = 4 * R_;
    std::vector<Vertex> ends;
    for (EdgeId id = 0; id < g_.num_edges(); ++id) {
      if (prev.removed[id]) continue;
      const Edge& e = g_.edge(id);
      const std::int32_t a = depth[e.u], b = depth[e.v];
      if (a < 0 || b < 0 || std::abs(a - b) != 1) continue;
      const std::int32_t lo = std::min(a, b) - delta;
      if (lo < 0 || lo % period != 0) continue;
      if (j_from_one_ && lo / period < 1) continue;
      level->F.push_back(id);
      ends.push_back(e.u);
      ends.push_back(e.v);
    }
    level->end_distance = bfs_distances(g_, ends, BfsOptions{&prev.removed, nullptr, -1});
    level->removed = prev.removed;
    for (EdgeId id : level->F) level->removed[id] = 1;
    level->cluster = component_labels(g_, &level->removed, &level->num_clusters);
    level->root_of = std::move(root_of);
    level->depth = std::move(depth);
    return level;
  }

  LevelPtr next(const CutLevel& prev, int delta) const {
    std::vector<Vertex> root_of;
    Distances depth;
    frame(prev, root_of, depth);
    return cut(prev, std::move(root_of), std::move(depth), delta);
  }

  int R() const { return R_; }

 private:
  const Graph& g_;
  std::vector<std::uint32_t> rank_;
  int R_;
  bool j_from_one_;
  LevelPtr base_;
};

std::vector<char> erode(const std::vector<LevelPtr>& levels, std::size_t n, int s) {
  std::vector<char> keep(n, 1);
  for (const LevelPtr& level : levels) {
    for (std::size_t v = 0; v < n; ++v) {
      const auto d = level->end_distance[v];
      if (d != kUnreachable && d < s + 1) keep[v] = 0;
    }
  }
  return keep;
}

Partition leaf(const std::vector<LevelPtr>& levels, const std::vector<int>& delta, std::size_t n,
               int s) {
  Partition p;
  p.delta = delta;
  p.cluster_of = levels.back()->cluster;
  p.num_clusters = levels.back()->num_clusters;
  p.removed = levels.back()->removed;
  p.in_cover = erode(levels, n, s);
  return p;
}

int choose_delta(std::int32_t d, int R) {
  for (int k = 0; k < 4; ++k) {
    const int delta = k * R;
    const int r = (((d - delta) % (4 * R)) + 4 * R) % (4 * R);
    if (r >= R && r <= 3 * R) return delta;
  }
  fail("internal error: no delta satisfies the residue window");
}

void check_m(int m, int cap) {
  require(m >= 1, "m must be at least 1");
  require(m <= cap, "m = " + std::to_string(m) + " exceeds the partition cap of " +
                        std::to_string(cap) + " (4^m partitions)");
}

}  // namespace

std::vector<std::uint32_t> order_rank(const Graph& host, const std::vector<Vertex>& vertex_order) {
  const std::size_t n = host.num_vertices();
  std::vector<Vertex> order = vertex_order;
  if (order.empty() && n > 0) {
    std::vector<char> seen(n, 0);
    for (Vertex s = 0; s < n; ++s) {
      if (seen[s]) continue;
      for (Vertex v : bfs_order(host, s)) {
        seen[v] = 1;
        order.push_back(v);
      }
    }
  }
  require(order.size() == n, "vertex order must list every vertex exactly once");
  std::vector<std::uint32_t> rank(n, UINT32_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    require(order[i] < n && rank[order[i]] == UINT32_MAX,
            "vertex order must list every vertex exactly once");
    rank[order[i]] = static_cast<std::uint32_t>(i);
  }
  return rank;
}

std::size_t partition_index(const std::vector<int>& delta, int R) {
  std::size_t index = 0;
  for (int d : delta) {
    validate_delta(d, R);
    index = index * 4 + static_cast<std::size_t>(d / R);
  }
  return index;
}

CutSequence build_cuts(const Graph& host, const CutParams& params) {
  require(params.m >= 1, "m must be at least 1");
  require(params.s >= 0, "s must be nonnegative");
  require(params.delta.size() == static_cast<std::size_t>(params.m),
          "delta must have exactly m entries");
  LevelBuilder builder(host, params.vertex_order, params.R(), params.j_from_one);
  CutSequence seq{params, {}};
  const CutLevel* prev = builder.base().get();
  for (int d : params.delta) {
    seq.levels.push_back(builder.next(*prev, d));
    prev = seq.levels.back().get();
  }
  return seq;
}

Partition clusters_of(const Graph& host, const CutSequence& cuts) {
  require(!cuts.levels.empty(), "cut sequence is empty");
  Partition p;
  p.delta = cuts.params.delta;
  p.cluster_of = cuts.levels.back()->cluster;
  p.num_clusters = cuts.levels.back()->num_clusters;
  p.removed = cuts.levels.back()->removed;
  p.in_cover.assign(host.num_vertices(), 1);
  return p;
}

void build_cover(const CutSequence& cuts, int s, Partition& partition) {
  partition.in_cover = erode(cuts.levels, partition.cluster_of.size(), s);
}

std::vector<Partition> all_partitions(const Graph& host, int m, int s,
                                      const std::vector<Vertex>& vertex_order,
                                      const PartitionOptions& options) {
  check_m(m, options.cap);
  require(s >= 0, "s must be nonnegative");
  const int R = s + 3;
  const LevelBuilder builder(host, vertex_order, R, options.j_from_one);
  const std::size_t total = std::size_t{1} << (2 * m);
  std::vector<Partition> out(total);

  // Tasks fix the first `split` deltas; each walks the rest of the tree, sharing prefixes.
  const int split = std::min(m, 2);
  const std::size_t tasks = std::size_t{1} << (2 * split);
  parallel_for(tasks, options.threads, [&](std::size_t task) {
    std::vector<LevelPtr> levels;
    std::vector<int> delta;
    const CutLevel* prev = builder.base().get();
    for (int k = split - 1; k >= 0; --k) {
      delta.push_back(static_cast<int>((task >> (2 * k)) & 3) * R);
      levels.push_back(builder.next(*prev, delta.back()));
      prev = levels.back().get();
    }
    std::function<void()> walk = [&] {
      if (levels.size() == static_cast<std::size_t>(m)) {
        Partition p = leaf(levels, delta, host.num_vertices(), s);
        out[partition_index(delta, R)] = std::move(p);
        return;
      }
      std::vector<Vertex> root_of;
      Distances depth;
      builder.frame(*levels.back(), root_of, depth);
      for (int k = 0; k < 4; ++k) {
        delta.push_back(k * R);
        levels.push_back(builder.cut(*levels[levels.size() - 1], root_of, depth, k * R));
        walk();
        levels.pop_back();
        delta.pop_back();
      }
    };
    walk();
  });
  return out;
}

std::vector<std::vector<int>> select_delta_all(const Graph& host, int m, int s,
                                               const std::vector<Vertex>& vertex_order,
                                               bool j_from_one) {
  require(m >= 1, "m must be at least 1");
  require(s >= 0, "s must be nonnegative");
  const int R = s + 3;
  const LevelBuilder builder(host, vertex_order, R, j_from_one);
  std::vector<std::vector<int>> out(host.num_vertices());
  std::vector<Vertex> all(host.num_vertices());
  std::iota(all.begin(), all.end(), 0);

  std::function<void(const CutLevel&, const std::vector<Vertex>&, std::vector<int>&)> walk =
      [&](const CutLevel& prev, const std::vector<Vertex>& bucket, std::vector<int>& delta) {
        if (delta.size() == static_cast<std::size_t>(m)) {
          for (Vertex w : bucket) out[w] = delta;
          return;
        }
        std::vector<Vertex> root_of;
        Distances depth;
        builder.frame(prev, root_of, depth);
        std::vector<Vertex> by_delta[4];
        for (Vertex w : bucket) by_delta[choose_delta(depth[w], R) / R].push_back(w);
        for (int k = 0; k < 4; ++k) {
          if (by_delta[k].empty()) continue;
          const LevelPtr level = builder.cut(prev, root_of, depth, k * R);
          delta.push_back(k * R);
          walk(*level, by_delta[k], delta);
          delta.pop_back();
        }
      };
  std::vector<int> delta;
  walk(*builder.base(), all, delta);
  return out;
}

std::vector<int> select_delta_for_vertex(const Graph& host, Vertex w, int m, int s,
                                         const std::vector<Vertex>& vertex_order, bool j_from_one) {
  require(host.contains(w), "vertex is not in the host");
  require(m >= 1, "m must be at least 1");
  const int R = s + 3;
  const LevelBuilder builder(host, vertex_order, R, j_from_one);
  std::vector<int> delta;
  LevelPtr level = builder.base();
  for (int k = 0; k < m; ++k) {
    std::vector<Vertex> root_of;
    Distances depth;
    builder.frame(*level, root_of, depth);
    delta.push_back(choose_delta(depth[w], R));
    level = builder.cut(*level, std::move(root_of), std::move(depth), delta.back());
  }
  return delta;
}

BallIndex ball_index(const Graph& host, int s) {
  require(s >= 0, "s must be nonnegative");
  const std::size_t n = host.num_vertices();
  BallIndex index;
  index.offsets.reserve(n + 1);
  index.offsets.push_back(0);
  std::vector<std::uint32_t> stamp(n, UINT32_MAX);
  std::vector<Vertex> queue;
  std::vector<std::int32_t> dist(n, 0);
  for (Vertex x = 0; x < n; ++x) {
    queue.assign(1, x);
    stamp[x] = x;
    dist[x] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      if (dist[u] == s) continue;
      for (Vertex w : host.neighbors(u)) {
        if (stamp[w] == x) continue;
        stamp[w] = x;
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
    index.members.insert(index.members.end(), queue.begin(), queue.end());
    index.offsets.push_back(index.members.size());
  }
  return index;
}

MultiplicityResult s_multiplicity(const std::vector<Partition>& cover, const BallIndex& balls,
                                  const std::vector<char>* interior) {
  const std::size_t n = balls.offsets.size() - 1;
  std::vector<std::size_t> count(n, 0);
  std::vector<std::uint32_t> seen;
  for (const Partition& p : cover) {
    for (Vertex x = 0; x < n; ++x) {
      seen.clear();
      for (Vertex y : balls.ball(x)) {
        if (!p.in_cover[y]) continue;
        if (std::find(seen.begin(), seen.end(), p.cluster_of[y]) == seen.end()) {
          seen.push_back(p.cluster_of[y]);
        }
      }
      count[x] += seen.size();
    }
  }
  MultiplicityResult r;
  for (Vertex x = 0; x < n; ++x) {
    if (count[x] > r.multiplicity) {
      r.multiplicity = count[x];
      r.witness = x;
    }
    if ((interior == nullptr || (*interior)[x]) && count[x] > r.interior_multiplicity) {
      r.interior_multiplicity = count[x];
    }
  }
  return r;
}

SeparationResult separation_check(const std::vector<Partition>& cover, const BallIndex& balls,
                                  const std::vector<char>* interior) {
  const std::size_t n = balls.offsets.size() - 1;
  SeparationResult r;
  for (std::size_t pi = 0; pi < cover.size(); ++pi) {
    const Partition& p = cover[pi];
    for (Vertex x = 0; x < n; ++x) {
      for (Vertex y : balls.ball(x)) {
        if (!p.in_cover[y] || p.cluster_of[y] == p.cluster_of[x]) continue;
        if (r.passed) {
          r.passed = false;
          r.x = x;
          r.y = y;
          r.partition = pi;
        }
        if (interior == nullptr || (*interior)[x]) r.interior_passed = false;
      }
    }
  }
  return r;
}

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<Vertex>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Vertex x : v) h = (h ^ x) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

// Ambient distances: a dense matrix for moderate hosts, BFS rows otherwise.
class Metric {
 public:
  static constexpr std::size_t kDenseLimit = 6000;

  Metric(const Graph& g, int threads) : g_(g), n_(g.num_vertices()) {
    if (n_ > kDenseLimit) return;
    dense_.assign(n_ * n_, UINT16_MAX);
    parallel_for(n_, threads, [&](std::size_t v) {
      const Distances d = bfs_distances(g_, static_cast<Vertex>(v));
      for (std::size_t w = 0; w < n_; ++w) {
        dense_[v * n_ + w] = d[w] < 0 ? UINT16_MAX : static_cast<std::uint16_t>(d[w]);
      }
    });
  }

  // Distances from v to each member, in member order.
  std::vector<std::int32_t> row(Vertex v, const std::vector<Vertex>& members) const {
    std::vector<std::int32_t> out(members.size());
    if (!dense_.empty()) {
      for (std::size_t i = 0; i < members.size(); ++i) {
        const auto d = dense_[v * n_ + members[i]];
        out[i] = d == UINT16_MAX ? kUnreachable : d;
      }
    } else {
      const Distances d = bfs_distances(g_, v);
      for (std::size_t i = 0; i < members.size(); ++i) out[i] = d[members[i]];
    }
    return out;
  }

  // Exact ambient diameter; eccentricities are pruned by the triangle
  // inequality through the first member.
  std::uint32_t diameter(const std::vector<Vertex>& members) const {
    const auto base = row(members.front(), members);
    for (auto d : base) require(d != kUnreachable, "cover element spans several components");
    std::vector<std::size_t> idx(members.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return base[a] != base[b] ? base[a] > base[b] : a < b;
    });
    const std::int32_t radius = base[idx.front()];
    std::int32_t best = radius;
    for (std::size_t i : idx) {
      if (base[i] + radius <= best) break;
      const auto r = row(members[i], members);
      best = std::max(best, *std::max_element(r.begin(), r.end()));
    }
    return static_cast<std::uint32_t>(best);
  }

 private:
  const Graph& g_;
  std::size_t n_;
  std::vector<std::uint16_t> dense_;
};

}  // namespace

DiameterReport cover_diameter_report(const Graph& host, const std::vector<Partition>& cover, int s,
                                     int threads) {
  const Metric metric(host, threads);
  DiameterReport report;

  std::vector<std::vector<std::vector<Vertex>>> elements(cover.size());
  std::vector<std::vector<std::size_t>> cluster_sizes(cover.size());
  for (std::size_t pi = 0; pi < cover.size(); ++pi) {
    const Partition& p = cover[pi];
    elements[pi].resize(p.num_clusters);
    cluster_sizes[pi].assign(p.num_clusters, 0);
    for (Vertex v = 0; v < p.cluster_of.size(); ++v) {
      ++cluster_sizes[pi][p.cluster_of[v]];
      if (p.in_cover[v]) elements[pi][p.cluster_of[v]].push_back(v);
    }
  }

  // Identical elements recur across partitions; measure each distinct one once.
  std::unordered_map<std::vector<Vertex>, std::size_t, VectorHash> slot;
  std::vector<const std::vector<Vertex>*> distinct;
  for (const auto& row : elements) {
    for (const auto& e : row) {
      if (!e.empty() && slot.emplace(e, distinct.size()).second) distinct.push_back(&e);
    }
  }
  std::vector<std::uint32_t> diam(distinct.size());
  parallel_for(distinct.size(), threads, [&](std::size_t i) { diam[i] = metric.diameter(*distinct[i]); });

  for (std::size_t pi = 0; pi < cover.size(); ++pi) {
    for (std::uint32_t c = 0; c < elements[pi].size(); ++c) {
      const auto& e = elements[pi][c];
      DiameterReport::Row row{pi, c, cluster_sizes[pi][c], e.size(), std::nullopt};
      ++report.num_elements;
      if (!e.empty()) {
        ++report.num_nonempty;
        row.diameter = diam[slot.at(e)];
        report.max_diameter = std::max(report.max_diameter, *row.diameter);
        ++report.histogram[*row.diameter];
      }
      report.rows.push_back(row);
    }
  }
  report.gamma_emp = static_cast<double>(report.max_diameter) / std::max(s, 1);
  return report;
}

bool partition_property(const Graph& host, const Partition& p) {
  const std::size_t n = host.num_vertices();
  if (p.cluster_of.size() != n || p.removed.size() != host.num_edges()) return false;
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (EdgeId id = 0; id < host.num_edges(); ++id) {
    if (p.removed[id]) continue;
    const Edge& e = host.edge(id);
    if (p.cluster_of[e.u] != p.cluster_of[e.v]) return false;  // residual edge crosses clusters
    parent[find(e.u)] = find(e.v);
  }
  // Same cluster label iff same union-find root, and labels cover 0..num_clusters-1.
  std::vector<std::int64_t> root_of_cluster(p.num_clusters, -1);
  std::vector<std::int64_t> cluster_of_root(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    const auto c = p.cluster_of[v];
    if (c >= p.num_clusters) return false;
    const auto r = find(v);
    if (root_of_cluster[c] < 0) root_of_cluster[c] = r;
    if (cluster_of_root[r] < 0) cluster_of_root[r] = c;
    if (root_of_cluster[c] != r || cluster_of_root[r] != c) return false;
  }
  return std::all_of(root_of_cluster.begin(), root_of_cluster.end(),
                     [](std::int64_t r) { return r >= 0; });
}

bool ScaleReport::passed() const {
  const std::size_t bound = std::size_t{1} << (2 * m);
  return coverage_pass && separation.passed && partition_pass && multiplicity.multiplicity <= bound;
}

std::vector<ScaleReport> nagata_witness(const Graph& host, int m, const std::vector<int>& s_list,
                                        const NagataOptions& options) {
  check_m(m, options.partitions.cap);
  require(!s_list.empty(), "at least one scale is required");
  require(host.num_vertices() > 0 && connected_components(host).size() == 1,
          "host must be a nonempty connected graph");
  const std::size_t n = host.num_vertices();
  std::vector<ScaleReport> reports;
  for (int s : s_list) {
    require(s >= 0, "scales must be nonnegative");
    ScaleReport rep;
    rep.m = m;
    rep.s = s;
    rep.R = s + 3;

    std::vector<char> interior(n, 1);
    if (options.ball_radius) {
      const Distances d0 = bfs_distances(host, 0);
      for (Vertex v = 0; v < n; ++v) interior[v] = d0[v] <= *options.ball_radius - s;
    }
    rep.interior_fraction =
        static_cast<double>(std::count(interior.begin(), interior.end(), 1)) / static_cast<double>(n);

    const auto partitions = all_partitions(host, m, s, options.vertex_order, options.partitions);
    rep.num_partitions = partitions.size();
    for (std::size_t i = 0; i < partitions.size() && rep.partition_pass; ++i) {
      if (!partition_property(host, partitions[i])) {
        rep.partition_pass = false;
        rep.partition_witness = i;
      }
    }

    const auto chosen =
        select_delta_all(host, m, s, options.vertex_order, options.partitions.j_from_one);
    for (Vertex w = 0; w < n; ++w) {
      if (!partitions[partition_index(chosen[w], rep.R)].in_cover[w]) {
        rep.coverage_pass = false;
        rep.coverage_witness = w;
        break;
      }
    }

    const BallIndex balls = ball_index(host, s);
    rep.multiplicity = s_multiplicity(partitions, balls, &interior);
    rep.separation = separation_check(partitions, balls, &interior);
    rep.diameters = cover_diameter_report(host, partitions, s, options.partitions.threads);
    rep.num_elements = rep.diameters.num_elements;
    rep.num_nonempty_elements = rep.diameters.num_nonempty;
    if (!options.keep_rows) rep.diameters.rows.clear();
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace minex
