#include <algorithm>
#include <random>

#include "minex/error.hpp"
#include "minex/minor.hpp"

namespace minex {
namespace {

// Blocks larger than this are searched greedily only.
constexpr std::size_t kExactBlockLimit = 64;

// Vertex sets of the biconnected blocks of g (iterative Tarjan). Isolated
// vertices form no block.
std::vector<VertexSet> biconnected_blocks(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::int64_t> disc(n, -1), low(n, 0);
  std::vector<Edge> edge_stack;
  std::vector<VertexSet> blocks;
  std::int64_t timer = 0;

  struct Frame {
    Vertex v;
    Vertex parent;
    std::size_t next;
  };
  for (Vertex root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    disc[root] = low[root] = timer++;
    std::vector<Frame> stack{{root, root, 0}};
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto nbrs = g.neighbors(f.v);
      if (f.next < nbrs.size()) {
        const Vertex w = nbrs[f.next++];
        if (w == f.parent && f.v != root) continue;
        if (disc[w] < 0) {
          edge_stack.emplace_back(f.v, w);
          disc[w] = low[w] = timer++;
          stack.push_back({w, f.v, 0});
        } else if (disc[w] < disc[f.v]) {
          edge_stack.emplace_back(f.v, w);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      const Vertex v = f.v;
      const Vertex parent = f.parent;
      stack.pop_back();
      if (stack.empty()) break;
      low[parent] = std::min(low[parent], low[v]);
      if (low[v] >= disc[parent]) {
        std::vector<Vertex> members;
        const Edge cut(parent, v);
        while (!edge_stack.empty()) {
          const Edge e = edge_stack.back();
          edge_stack.pop_back();
          members.push_back(e.u);
          members.push_back(e.v);
          if (e == cut) break;
        }
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        blocks.emplace_back(std::move(members));
      }
    }
  }
  return blocks;
}

BranchDecomposition lift(const PatternGraph& pattern, const std::vector<std::vector<Vertex>>& sets,
                         const VertexSet& block) {
  BranchDecomposition bd{pattern, {}};
  for (const auto& s : sets) {
    std::vector<Vertex> members;
    for (Vertex v : s) members.push_back(block.members()[v]);
    bd.sets.emplace_back(std::move(members));
  }
  return bd;
}

class Searcher {
 public:
  Searcher(const Graph& g, std::size_t m, std::uint64_t budget, std::uint64_t& used)
      : g_(g), m_(m), budget_(budget), used_(used) {}

  // Seeds spread by farthest-point sampling, then links unlinked pairs along
  // shortest paths through free vertices.
  std::optional<std::vector<std::vector<Vertex>>> greedy(std::mt19937_64& rng) {
    const std::size_t n = g_.num_vertices();
    std::vector<std::int64_t> owner(n, -1);
    std::vector<std::vector<Vertex>> sets(m_);
    Vertex seed = static_cast<Vertex>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
    std::vector<Vertex> seeds{seed};
    Distances nearest = bfs_distances(g_, seed);
    charge(n);
    while (seeds.size() < m_) {
      std::int32_t best = -1;
      std::vector<Vertex> candidates;
      for (Vertex v = 0; v < n; ++v) {
        if (nearest[v] > best) {
          best = nearest[v];
          candidates.clear();
        }
        if (nearest[v] == best) candidates.push_back(v);
      }
      if (best <= 0) return std::nullopt;
      const Vertex next = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
      seeds.push_back(next);
      const Distances d = bfs_distances(g_, next);
      charge(n);
      for (Vertex v = 0; v < n; ++v) nearest[v] = std::min(nearest[v], d[v]);
    }
    for (std::size_t i = 0; i < m_; ++i) {
      sets[i].push_back(seeds[i]);
      owner[seeds[i]] = static_cast<std::int64_t>(i);
    }

    std::vector<char> allowed(n);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = i + 1; j < m_; ++j) {
        if (exhausted()) return std::nullopt;
        if (linked(sets[i], sets[j])) continue;
        for (Vertex v = 0; v < n; ++v) {
          allowed[v] = owner[v] < 0 || owner[v] == static_cast<std::int64_t>(i) ||
                       owner[v] == static_cast<std::int64_t>(j);
        }
        const Path p = shortest_path(g_, VertexSet(sets[i]), VertexSet(sets[j]), &allowed);
        charge(n);
        if (p.empty()) return std::nullopt;
        const std::size_t interior = p.size() - 2;
        for (std::size_t k = 1; k + 1 < p.size(); ++k) {
          const std::size_t side = k <= (interior + 1) / 2 ? i : j;
          sets[side].push_back(p[k]);
          owner[p[k]] = static_cast<std::int64_t>(side);
        }
      }
    }
    return sets;
  }

  // Exact label assignment over vertices in BFS order; label 0 means unused.
  // Returns nullopt both on proven absence and on budget exhaustion; check
  // exhausted() to tell them apart.
  std::optional<std::vector<std::vector<Vertex>>> exact() {
    const std::size_t n = g_.num_vertices();
    order_.clear();
    std::vector<char> seen(n, 0);
    for (Vertex s = 0; s < n; ++s) {
      if (seen[s]) continue;
      for (Vertex v : bfs_order(g_, s)) {
        seen[v] = 1;
        order_.push_back(v);
      }
    }
    label_.assign(n, -1);
    if (dfs(0, 0)) {
      std::vector<std::vector<Vertex>> sets(m_);
      for (Vertex v = 0; v < n; ++v) {
        if (label_[v] > 0) sets[label_[v] - 1].push_back(v);
      }
      return sets;
    }
    return std::nullopt;
  }

  bool exhausted() const { return used_ >= budget_; }

 private:
  void charge(std::uint64_t units) { used_ += units; }

  bool linked(const std::vector<Vertex>& a, const std::vector<Vertex>& b) const {
    for (Vertex v : a) {
      for (Vertex w : g_.neighbors(v)) {
        if (std::find(b.begin(), b.end(), w) != b.end()) return true;
      }
    }
    return false;
  }

  // Component of start inside vertices accepted by keep.
  template <class Keep>
  std::vector<char> reach(Vertex start, Keep keep) const {
    std::vector<char> hit(g_.num_vertices(), 0);
    std::vector<Vertex> queue{start};
    hit[start] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (Vertex w : g_.neighbors(queue[head])) {
        if (!hit[w] && keep(w)) {
          hit[w] = 1;
          queue.push_back(w);
        }
      }
    }
    return hit;
  }

  // Whether the partial labeling can still be completed; with no unassigned
  // vertices left this is exactly the minor condition.
  bool feasible(int labels_used, bool require_complete) const {
    const std::size_t n = g_.num_vertices();
    std::vector<Vertex> first(labels_used + 1, 0);
    std::vector<char> present(labels_used + 1, 0);
    for (Vertex v = 0; v < n; ++v) {
      if (label_[v] > 0 && !present[label_[v]]) {
        present[label_[v]] = 1;
        first[label_[v]] = v;
      }
    }
    const auto free_or = [&](int a, int b) {
      return [&, a, b](Vertex w) {
        const int l = require_complete && label_[w] < 0 ? 0 : label_[w];
        return l < 0 || l == a || l == b;
      };
    };
    for (int i = 1; i <= labels_used; ++i) {
      const auto hit = reach(first[i], free_or(i, i));
      for (Vertex v = 0; v < n; ++v) {
        if (label_[v] == i && !hit[v]) return false;
      }
    }
    for (int i = 1; i <= labels_used; ++i) {
      for (int j = i + 1; j <= labels_used; ++j) {
        if (!reach(first[i], free_or(i, j))[first[j]]) return false;
        if (require_complete) {
          bool adjacent = false;
          for (Vertex v = 0; v < n && !adjacent; ++v) {
            if (label_[v] != i) continue;
            for (Vertex w : g_.neighbors(v)) {
              if (label_[w] == j) {
                adjacent = true;
                break;
              }
            }
          }
          if (!adjacent) return false;
        }
      }
    }
    return true;
  }

  bool dfs(std::size_t pos, int labels_used) {
    if (exhausted()) return false;
    charge(1);
    const std::size_t remaining = order_.size() - pos;
    if (static_cast<std::size_t>(labels_used) + remaining < m_) return false;
    if (!feasible(labels_used, false)) return false;
    if (static_cast<std::size_t>(labels_used) == m_ && feasible(labels_used, true)) {
      for (std::size_t k = pos; k < order_.size(); ++k) label_[order_[k]] = 0;
      return true;
    }
    if (pos == order_.size()) return false;
    const Vertex v = order_[pos];
    const int top = std::min<int>(labels_used + 1, static_cast<int>(m_));
    for (int l = 1; l <= top; ++l) {
      label_[v] = l;
      if (dfs(pos + 1, std::max(labels_used, l))) return true;
    }
    label_[v] = 0;
    if (dfs(pos + 1, labels_used)) return true;
    label_[v] = -1;
    return false;
  }

  const Graph& g_;
  std::size_t m_;
  std::uint64_t budget_;
  std::uint64_t& used_;
  std::vector<Vertex> order_;
  std::vector<int> label_;
};

}  // namespace

CliqueSearchResult find_clique_minor(const Graph& host, std::size_t m,
                                     const CliqueSearchOptions& options) {
  require(m >= 1, "clique order must be at least 1");
  CliqueSearchResult result;
  const PatternGraph pattern = PatternGraph::complete(m);
  const std::size_t n = host.num_vertices();

  if (m == 1) {
    if (n > 0) result.decomposition = BranchDecomposition{pattern, {VertexSet{0}}};
    result.exhaustive = n == 0;
    return result;
  }
  if (m == 2) {
    if (host.num_edges() > 0) {
      const Edge e = host.edges().front();
      result.decomposition = BranchDecomposition{pattern, {VertexSet{e.u}, VertexSet{e.v}}};
    }
    result.exhaustive = host.num_edges() == 0;
    return result;
  }

  // A 2-connected minor of a graph is a minor of one of its blocks.
  std::vector<VertexSet> blocks;
  for (VertexSet& b : biconnected_blocks(host)) {
    if (b.size() < m) continue;
    const Graph sub = induced_subgraph(host, b);
    if (sub.num_edges() < m * (m - 1) / 2) continue;
    blocks.push_back(std::move(b));
  }
  std::sort(blocks.begin(), blocks.end(), [](const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });

  std::vector<Graph> subs;
  for (const VertexSet& b : blocks) subs.push_back(induced_subgraph(host, b));

  auto accept = [&](const std::vector<std::vector<Vertex>>& sets, std::size_t block) {
    BranchDecomposition bd = lift(pattern, sets, blocks[block]);
    if (!verify_minor(host, bd).passed()) return false;
    result.decomposition = std::move(bd);
    return true;
  };

  for (std::size_t b = 0; b < blocks.size(); ++b) {
    Searcher searcher(subs[b], m, options.budget, result.expansions);
    for (int restart = 0; restart < options.greedy_restarts && !searcher.exhausted(); ++restart) {
      std::seed_seq seq{options.seed, static_cast<std::uint64_t>(b), static_cast<std::uint64_t>(restart)};
      std::mt19937_64 rng(seq);
      if (auto sets = searcher.greedy(rng); sets && accept(*sets, b)) return result;
    }
  }

  bool complete = true;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (subs[b].num_vertices() > kExactBlockLimit) {
      complete = false;
      continue;
    }
    Searcher searcher(subs[b], m, options.budget, result.expansions);
    if (auto sets = searcher.exact()) {
      if (accept(*sets, b)) return result;
      fail("internal error: exact clique search produced an invalid witness");
    }
    if (searcher.exhausted()) {
      complete = false;
      break;
    }
  }
  result.exhaustive = complete;
  return result;
}

}  // namespace minex
