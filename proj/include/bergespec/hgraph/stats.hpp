#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <vector>

#include "bergespec/hgraph/types.hpp"

namespace bergespec {

struct GraphStats {
  bool connected = false;
  std::optional<int> diameter;  // nullopt: infinite (disconnected)
  std::optional<int> girth;     // nullopt: acyclic
  int clique_number = 0;
};

namespace detail {

inline std::vector<int> bfs_distances(const std::vector<std::vector<Vertex>>& adj, Vertex source) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<Vertex> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    for (Vertex w : adj[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
  }
  return dist;
}

// Shortest cycle through BFS trees: a non-tree edge (v,w) closes a walk of
// length d(v)+d(w)+1, and the minimum over all roots is the girth.
inline std::optional<int> girth(const std::vector<std::vector<Vertex>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::optional<int> best;
  for (Vertex s = 0; s < n; ++s) {
    std::vector<int> dist(adj.size(), -1), parent(adj.size(), -1);
    std::queue<Vertex> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (Vertex w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          q.push(w);
        } else if (parent[v] != w) {
          const int len = dist[v] + dist[w] + 1;
          if (!best || len < *best) best = len;
        }
      }
    }
  }
  return best;
}

// Branch and bound over candidate sets, vertices ordered by degree.
inline void grow_clique(const std::vector<std::vector<bool>>& adj, std::vector<Vertex>& candidates,
                        int size, int& best) {
  if (candidates.empty()) {
    best = std::max(best, size);
    return;
  }
  while (!candidates.empty()) {
    if (size + static_cast<int>(candidates.size()) <= best) return;
    Vertex v = candidates.back();
    candidates.pop_back();
    std::vector<Vertex> next;
    for (Vertex w : candidates)
      if (adj[v][w]) next.push_back(w);
    grow_clique(adj, next, size + 1, best);
  }
}

}  // namespace detail

inline int clique_number(const Graph& g) {
  const int n = g.num_vertices();
  if (n == 0) return 0;
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = true;
  auto deg = g.degrees();
  std::vector<Vertex> candidates(n);
  for (int i = 0; i < n; ++i) candidates[i] = i;
  std::sort(candidates.begin(), candidates.end(),
            [&](Vertex a, Vertex b) { return deg[a] < deg[b] || (deg[a] == deg[b] && a < b); });
  int best = 1;
  detail::grow_clique(adj, candidates, 0, best);
  return best;
}

inline GraphStats graph_stats(const Graph& g) {
  GraphStats stats;
  const auto adj = g.adjacency();
  const int n = g.num_vertices();
  int diameter = 0;
  bool connected = true;
  for (Vertex s = 0; s < n; ++s) {
    auto dist = detail::bfs_distances(adj, s);
    for (int d : dist) {
      if (d < 0) connected = false;
      diameter = std::max(diameter, d);
    }
  }
  stats.connected = connected;
  if (connected) stats.diameter = diameter;
  stats.girth = detail::girth(adj);
  stats.clique_number = clique_number(g);
  return stats;
}

}  // namespace bergespec
