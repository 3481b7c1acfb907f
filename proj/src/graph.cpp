#include "minex/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "minex/error.hpp"

namespace minex {

VertexSet::VertexSet(std::initializer_list<Vertex> members)
    : VertexSet(std::vector<Vertex>(members)) {}

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

EdgeSet::EdgeSet(std::vector<Edge> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool EdgeSet::contains(Edge e) const {
  return std::binary_search(members_.begin(), members_.end(), e);
}

GraphBuilder::GraphBuilder(std::size_t num_vertices) : n_(num_vertices) {}

void GraphBuilder::add_edge(Vertex u, Vertex v) {
  require(u < n_ && v < n_, "edge endpoint is not a vertex");
  require(u != v, "self-loops are not allowed");
  edges_.emplace_back(u, v);
}

void GraphBuilder::add_edges(std::vector<Edge> edges) {
  for (const Edge& e : edges) {
    require(e.v < n_, "edge endpoint is not a vertex");
    require(e.u != e.v, "self-loops are not allowed");
  }
  if (edges_.empty()) {
    edges_ = std::move(edges);
  } else {
    edges_.insert(edges_.end(), edges.begin(), edges.end());
  }
}

void GraphBuilder::set_label(Vertex v, std::string label) {
  require(v < n_, "label for unknown vertex");
  if (labels_.empty()) labels_.resize(n_);
  labels_[v] = std::move(label);
}

Graph GraphBuilder::build() && {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  Graph g;
  g.offsets_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());

  // Sorted edges fill each row in increasing neighbor order for the smaller
  // endpoint; a final per-row sort handles the larger endpoint.
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  g.adjacency_.resize(2 * edges_.size());
  g.adjacency_edge_.resize(2 * edges_.size());
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    g.adjacency_[cursor[e.u]] = e.v;
    g.adjacency_edge_[cursor[e.u]++] = id;
    g.adjacency_[cursor[e.v]] = e.u;
    g.adjacency_edge_[cursor[e.v]++] = id;
  }
  for (std::size_t v = 0; v < n_; ++v) {
    const std::size_t lo = g.offsets_[v];
    const std::size_t hi = g.offsets_[v + 1];
    std::vector<std::pair<Vertex, EdgeId>> row;
    row.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) row.emplace_back(g.adjacency_[i], g.adjacency_edge_[i]);
    std::sort(row.begin(), row.end());
    for (std::size_t i = lo; i < hi; ++i) {
      g.adjacency_[i] = row[i - lo].first;
      g.adjacency_edge_[i] = row[i - lo].second;
    }
  }
  g.edges_ = std::move(edges_);
  g.labels_ = std::move(labels_);
  return g;
}

Graph Graph::from_edges(std::size_t n, const std::vector<Edge>& edges,
                        std::vector<std::string> labels) {
  GraphBuilder builder(n);
  for (const Edge& e : edges) builder.add_edge(e.u, e.v);
  if (!labels.empty()) {
    require(labels.size() == n, "label count does not match vertex count");
    for (Vertex v = 0; v < n; ++v) builder.set_label(v, std::move(labels[v]));
  }
  return std::move(builder).build();
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::span<const EdgeId> Graph::incident_edges(Vertex v) const {
  return {adjacency_edge_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::optional<EdgeId> Graph::edge_id(Vertex u, Vertex v) const {
  if (!contains(u) || !contains(v)) return std::nullopt;
  auto row = neighbors(u);
  auto it = std::lower_bound(row.begin(), row.end(), v);
  if (it == row.end() || *it != v) return std::nullopt;
  return incident_edges(u)[static_cast<std::size_t>(it - row.begin())];
}

bool Graph::has_edge(Vertex u, Vertex v) const { return edge_id(u, v).has_value(); }

const std::string& Graph::label(Vertex v) const {
  static const std::string kEmpty;
  return labels_.empty() ? kEmpty : labels_[v];
}

Distances bfs_distances(const Graph& g, Vertex source) {
  require(g.contains(source), "bfs source is not a vertex");
  const Vertex sources[] = {source};
  return bfs_distances(g, sources, {});
}

Distances bfs_distances(const Graph& g, std::span<const Vertex> sources,
                        const BfsOptions& options) {
  Distances dist(g.num_vertices(), kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(g.num_vertices());
  const auto allowed = [&](Vertex v) {
    return options.allowed_vertices == nullptr || (*options.allowed_vertices)[v];
  };
  for (Vertex s : sources) {
    if (dist[s] == 0 || !allowed(s)) continue;
    dist[s] = 0;
    queue.push_back(s);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    if (options.max_depth >= 0 && dist[u] >= options.max_depth) continue;
    auto nbrs = g.neighbors(u);
    auto ids = g.incident_edges(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const Vertex w = nbrs[i];
      if (dist[w] != kUnreachable) continue;
      if (options.removed_edges != nullptr && (*options.removed_edges)[ids[i]]) continue;
      if (!allowed(w)) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

std::vector<Vertex> bfs_order(const Graph& g, Vertex source) {
  require(g.contains(source), "bfs source is not a vertex");
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<Vertex> order{source};
  seen[source] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (Vertex w : g.neighbors(order[head])) {
      if (!seen[w]) {
        seen[w] = 1;
        order.push_back(w);
      }
    }
  }
  return order;
}

std::vector<std::uint32_t> component_labels(const Graph& g,
                                            const std::vector<char>* removed_edges,
                                            std::size_t* num_components) {
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(g.num_vertices(), kNone);
  std::vector<Vertex> stack;
  std::uint32_t count = 0;
  for (Vertex root = 0; root < g.num_vertices(); ++root) {
    if (label[root] != kNone) continue;
    label[root] = count;
    stack.push_back(root);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      auto nbrs = g.neighbors(u);
      auto ids = g.incident_edges(u);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        if (removed_edges != nullptr && (*removed_edges)[ids[i]]) continue;
        if (label[nbrs[i]] == kNone) {
          label[nbrs[i]] = count;
          stack.push_back(nbrs[i]);
        }
      }
    }
    ++count;
  }
  if (num_components != nullptr) *num_components = count;
  return label;
}

std::vector<VertexSet> connected_components(const Graph& g) {
  std::size_t count = 0;
  const auto label = component_labels(g, nullptr, &count);
  std::vector<std::vector<Vertex>> parts(count);
  for (Vertex v = 0; v < g.num_vertices(); ++v) parts[label[v]].push_back(v);
  std::vector<VertexSet> result;
  result.reserve(count);
  for (auto& p : parts) result.emplace_back(std::move(p));
  return result;
}

namespace {

std::vector<char> membership_mask(const Graph& g, const VertexSet& s) {
  std::vector<char> mask(g.num_vertices(), 0);
  for (Vertex v : s) {
    require(g.contains(v), "vertex set member is not a vertex of the graph");
    mask[v] = 1;
  }
  return mask;
}

}  // namespace

bool is_connected_subset(const Graph& g, const VertexSet& s) {
  const auto mask = membership_mask(g, s);
  if (s.empty()) return false;
  const Vertex sources[] = {s.front()};
  const auto dist = bfs_distances(g, sources, {.allowed_vertices = &mask});
  return std::all_of(s.begin(), s.end(), [&](Vertex v) { return dist[v] != kUnreachable; });
}

namespace {

std::uint32_t diameter_with(const Graph& g, const VertexSet& s, const std::vector<char>* allowed) {
  require(!s.empty(), "diameter of an empty set");
  std::int32_t best = 0;
  for (Vertex u : s) {
    const Vertex sources[] = {u};
    const auto dist = bfs_distances(g, sources, {.allowed_vertices = allowed});
    for (Vertex v : s) {
      require(dist[v] != kUnreachable, "set spans more than one component");
      best = std::max(best, dist[v]);
    }
  }
  return static_cast<std::uint32_t>(best);
}

}  // namespace

std::uint32_t set_diameter(const Graph& g, const VertexSet& s) {
  membership_mask(g, s);
  return diameter_with(g, s, nullptr);
}

std::uint32_t induced_diameter(const Graph& g, const VertexSet& s) {
  const auto mask = membership_mask(g, s);
  return diameter_with(g, s, &mask);
}

namespace {

// Residual network for unit vertex capacities: vertex v splits into
// in-node 2v and out-node 2v+1 joined by a capacity-one arc.
class VertexFlow {
 public:
  // Vertices flagged in shared carry unbounded capacity; an edge between two
  // of them carries one unit.
  VertexFlow(const Graph& g, const VertexSet& a, const VertexSet& b, const std::vector<char>& shared)
      : n_(g.num_vertices()), head_(2 * n_ + 2, -1) {
    const int kInf = static_cast<int>(n_) + 1;
    for (Vertex v = 0; v < n_; ++v) add_arc(in(v), out(v), shared[v] ? kInf : 1);
    for (const Edge& e : g.edges()) {
      const int cap = shared[e.u] && shared[e.v] ? 1 : kInf;
      add_arc(out(e.u), in(e.v), cap);
      add_arc(out(e.v), in(e.u), cap);
    }
    for (Vertex v : a) add_arc(source(), in(v), kInf);
    for (Vertex v : b) add_arc(out(v), sink(), kInf);
  }

  bool augment() {
    std::vector<int> via(head_.size(), -1);
    std::vector<char> seen(head_.size(), 0);
    std::deque<std::size_t> queue{source()};
    seen[source()] = 1;
    while (!queue.empty() && !seen[sink()]) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (int a = head_[u]; a != -1; a = arcs_[a].next) {
        const Arc& arc = arcs_[a];
        if (arc.cap > 0 && !seen[arc.to]) {
          seen[arc.to] = 1;
          via[arc.to] = a;
          queue.push_back(arc.to);
        }
      }
    }
    if (!seen[sink()]) return false;
    for (std::size_t x = sink(); x != source();) {
      const int a = via[x];
      arcs_[a].cap -= 1;
      arcs_[a ^ 1].cap += 1;
      x = arcs_[a ^ 1].to;
    }
    return true;
  }

  std::vector<char> reachable_from_source() const {
    std::vector<char> seen(head_.size(), 0);
    std::vector<std::size_t> stack{source()};
    seen[source()] = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (int a = head_[u]; a != -1; a = arcs_[a].next) {
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = 1;
          stack.push_back(arcs_[a].to);
        }
      }
    }
    return seen;
  }

  // Walks one unit of flow from the source; consumes it so repeated calls
  // yield distinct paths.
  Path extract_path() {
    Path path;
    std::size_t x = source();
    while (x != sink()) {
      int chosen = -1;
      for (int a = head_[x]; a != -1; a = arcs_[a].next) {
        if ((a & 1) == 0 && arcs_[a].flow() > 0) {
          chosen = a;
          break;
        }
      }
      if (chosen == -1) return {};
      arcs_[chosen].original -= 1;
      x = arcs_[chosen].to;
      if (x < 2 * n_ && x % 2 == 0) path.push_back(static_cast<Vertex>(x / 2));
    }
    return path;
  }

  std::size_t in(Vertex v) const { return 2 * static_cast<std::size_t>(v); }
  std::size_t out(Vertex v) const { return 2 * static_cast<std::size_t>(v) + 1; }
  std::size_t source() const { return 2 * n_; }
  std::size_t sink() const { return 2 * n_ + 1; }

 private:
  struct Arc {
    std::size_t to;
    int cap;
    int original;
    int next;
    // Forward arcs only: units currently routed and not yet extracted.
    int flow() const { return original - cap; }
  };

  void add_arc(std::size_t from, std::size_t to, int cap) {
    arcs_.push_back({to, cap, cap, head_[from]});
    head_[from] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, 0, 0, head_[to]});
    head_[to] = static_cast<int>(arcs_.size()) - 1;
  }

  std::size_t n_;
  std::vector<int> head_;
  std::vector<Arc> arcs_;
};

// Keeps only the stretch from the last a-vertex to the first b-vertex after
// it, so every path meets a and b exactly at its ends.
Path trim_path(Path path, const VertexSet& a, const VertexSet& b) {
  std::size_t start = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (a.contains(path[i])) start = i;
  }
  std::size_t stop = path.size() - 1;
  for (std::size_t i = start; i < path.size(); ++i) {
    if (b.contains(path[i])) {
      stop = i;
      break;
    }
  }
  return Path(path.begin() + static_cast<std::ptrdiff_t>(start),
              path.begin() + static_cast<std::ptrdiff_t>(stop) + 1);
}

}  // namespace

DisjointPaths vertex_disjoint_paths(const Graph& g, const VertexSet& a, const VertexSet& b,
                                    std::size_t k, bool share_singleton_ends) {
  membership_mask(g, a);
  membership_mask(g, b);
  require(!a.empty() && !b.empty(), "disjoint paths need nonempty endpoint sets");

  std::vector<char> shared(g.num_vertices(), 0);
  if (share_singleton_ends) {
    for (const VertexSet* side : {&a, &b}) {
      const Vertex v = side->front();
      if (side->size() == 1 && !(a.contains(v) && b.contains(v))) shared[v] = 1;
    }
  }
  VertexFlow flow(g, a, b, shared);
  std::size_t value = 0;
  while (value < k && flow.augment()) ++value;

  DisjointPaths result;
  if (value < k) {
    const auto reach = flow.reachable_from_source();
    std::vector<Vertex> cut;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (reach[flow.in(v)] && !reach[flow.out(v)]) cut.push_back(v);
    }
    result.separator = VertexSet(std::move(cut));
  }
  for (std::size_t i = 0; i < value; ++i) {
    Path p = flow.extract_path();
    if (!p.empty()) result.paths.push_back(trim_path(std::move(p), a, b));
  }
  return result;
}

Path shortest_path(const Graph& g, const VertexSet& sources, const VertexSet& targets,
                   const std::vector<char>* allowed_vertices) {
  constexpr Vertex kNone = std::numeric_limits<Vertex>::max();
  const auto allowed = [&](Vertex v) { return allowed_vertices == nullptr || (*allowed_vertices)[v]; };
  std::vector<Vertex> parent(g.num_vertices(), kNone);
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<Vertex> queue;
  for (Vertex s : sources) {
    if (!allowed(s)) continue;
    if (targets.contains(s)) return {s};
    seen[s] = 1;
    queue.push_back(s);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (Vertex w : g.neighbors(u)) {
      if (seen[w] || !allowed(w)) continue;
      seen[w] = 1;
      parent[w] = u;
      if (targets.contains(w)) {
        Path path{w};
        for (Vertex x = u; x != kNone; x = parent[x]) path.push_back(x);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(w);
    }
  }
  return {};
}

Graph induced_subgraph(const Graph& g, const VertexSet& s) {
  const auto& members = s.members();
  GraphBuilder builder(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (g.has_labels()) builder.set_label(static_cast<Vertex>(i), g.label(members[i]));
    for (Vertex w : g.neighbors(members[i])) {
      auto it = std::lower_bound(members.begin(), members.end(), w);
      if (it != members.end() && *it == w && w > members[i]) {
        builder.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(it - members.begin()));
      }
    }
  }
  return std::move(builder).build();
}

}  // namespace minex
