#pragma once

#include <cstdint>
#include <queue>
#include <random>
#include <vector>

#include "minex/graph.hpp"

namespace minex::testing {

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return Graph::from_edges(n, edges);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

// Vertex (r, c) has id r * cols + c.
inline Graph grid_graph(std::size_t rows, std::size_t cols) {
  std::vector<Edge> edges;
  for (Vertex r = 0; r < rows; ++r) {
    for (Vertex c = 0; c < cols; ++c) {
      const Vertex v = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(v, v + 1);
      if (r + 1 < rows) edges.emplace_back(v, v + cols);
    }
  }
  return Graph::from_edges(rows * cols, edges);
}

// Center 0, leaves 1..leaves.
inline Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, edges);
}

inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

// Plain adjacency-matrix Floyd-Warshall, independent of the library BFS.
inline std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
  const std::size_t n = g.num_vertices();
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
  for (const Edge& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

// Connectivity of a vertex subset by flood fill over the edge list.
inline bool subset_connected(const Graph& g, const std::vector<Vertex>& s) {
  if (s.empty()) return false;
  std::vector<char> in(g.num_vertices(), 0), seen(g.num_vertices(), 0);
  for (Vertex v : s) in[v] = 1;
  std::queue<Vertex> q;
  q.push(s.front());
  seen[s.front()] = 1;
  std::size_t count = 0;
  while (!q.empty()) {
    const Vertex u = q.front();
    q.pop();
    ++count;
    for (Vertex w : g.neighbors(u)) {
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        q.push(w);
      }
    }
  }
  return count == s.size();
}

}  // namespace minex::testing
