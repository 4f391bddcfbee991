#pragma once

#include <optional>
#include <vector>

#include "bergespec/hgraph/types.hpp"

namespace bergespec {

/// H * R with |R| = t: every edge is enlarged by the same t new vertices
/// n..n+t-1.
inline UniformHypergraph suspension(const UniformHypergraph& h, int t) {
  if (t < 1) throw Error(Errc::parameter_domain, "suspension needs t >= 1");
  if (h.empty()) throw Error(Errc::parameter_domain, "suspension of an empty hypergraph");
  const int n = h.num_vertices();
  auto edges = h.edge_list();
  for (auto& e : edges)
    for (int i = 0; i < t; ++i) e.push_back(n + i);
  return UniformHypergraph(h.rank() + t, n + t, edges);
}

inline UniformHypergraph suspension(const Graph& g, int t) { return suspension(as_hypergraph(g), t); }

/// r-uniform expansion: graph edge i receives the private vertices
/// n + i(r-2) .. n + (i+1)(r-2) - 1.
inline UniformHypergraph expansion(const Graph& g, int rank) {
  if (rank < 3) throw Error(Errc::parameter_domain, "expansion needs rank >= 3");
  const int extra = rank - 2;
  int next = g.num_vertices();
  std::vector<std::vector<Vertex>> edges;
  for (auto [u, v] : g.edges()) {
    std::vector<Vertex> e{u, v};
    for (int i = 0; i < extra; ++i) e.push_back(next++);
    edges.push_back(std::move(e));
  }
  return UniformHypergraph(rank, next, edges);
}

struct Link {
  UniformHypergraph hypergraph;
  /// old label -> new label; nullopt for the removed vertex.
  std::vector<std::optional<Vertex>> relabel;
};

/// L(v): the (r-1)-sets S with S + v an edge, on V(H) - v relabelled by
/// closing the gap left by v.
inline Link link(const UniformHypergraph& h, Vertex v) {
  if (v < 0 || v >= h.num_vertices()) throw Error(Errc::parameter_domain, "link vertex out of range");
  if (h.rank() < 2) throw Error(Errc::parameter_domain, "link of a rank-1 hypergraph");
  const int n = h.num_vertices();
  std::vector<std::optional<Vertex>> relabel(static_cast<std::size_t>(n));
  for (int w = 0; w < n; ++w)
    if (w != v) relabel[w] = w < v ? w : w - 1;
  std::vector<std::vector<Vertex>> edges;
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    auto e = h.edge(i);
    if (std::find(e.begin(), e.end(), v) == e.end()) continue;
    std::vector<Vertex> rest;
    for (Vertex w : e)
      if (w != v) rest.push_back(*relabel[w]);
    edges.push_back(std::move(rest));
  }
  return {UniformHypergraph(h.rank() - 1, n - 1, edges), std::move(relabel)};
}

/// Raw link of v in the original labelling, as sorted (r-1)-sets.
inline std::vector<std::vector<Vertex>> link_sets(const UniformHypergraph& h, Vertex v) {
  std::vector<std::vector<Vertex>> out;
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    auto e = h.edge(i);
    if (std::find(e.begin(), e.end(), v) == e.end()) continue;
    std::vector<Vertex> rest;
    for (Vertex w : e)
      if (w != v) rest.push_back(w);
    out.push_back(std::move(rest));
  }
  return out;
}

/// Drops vertices in no edge and relabels the rest in increasing order.
inline UniformHypergraph strip_isolated(const UniformHypergraph& h) {
  auto deg = h.degrees();
  std::vector<Vertex> relabel(deg.size(), -1);
  int next = 0;
  for (std::size_t v = 0; v < deg.size(); ++v)
    if (deg[v] > 0) relabel[v] = next++;
  auto edges = h.edge_list();
  for (auto& e : edges)
    for (auto& w : e) w = relabel[w];
  return UniformHypergraph(h.rank(), next, edges);
}

/// Applies a vertex permutation: vertex v becomes perm[v].
inline UniformHypergraph relabel(const UniformHypergraph& h, const std::vector<Vertex>& perm) {
  auto edges = h.edge_list();
  for (auto& e : edges)
    for (auto& w : e) w = perm[w];
  return UniformHypergraph(h.rank(), h.num_vertices(), edges);
}

}  // namespace bergespec
