#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bergespec/error.hpp"

namespace bergespec {

using Vertex = int;

/// Simple undirected graph on vertices 0..n-1. Edge order is the insertion
/// order; Berge enumeration processes edges in this order.
class Graph {
 public:
  using Edge = std::pair<Vertex, Vertex>;

  Graph() = default;

  Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw Error(Errc::invalid_structure, "negative vertex count");
    std::set<Edge> seen;
    for (auto& [u, v] : edges_) {
      if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw Error(Errc::invalid_structure, "edge endpoint out of range");
      if (u == v) throw Error(Errc::invalid_structure, "loop at vertex " + std::to_string(u));
      if (u > v) std::swap(u, v);
      if (!seen.insert({u, v}).second)
        throw Error(Errc::invalid_structure,
                    "duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    }
  }

  int num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool has_edge(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    return std::find(edges_.begin(), edges_.end(), Edge{u, v}) != edges_.end();
  }

  std::vector<std::vector<Vertex>> adjacency() const {
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n_));
    for (auto [u, v] : edges_) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    return adj;
  }

  std::vector<int> degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(n_), 0);
    for (auto [u, v] : edges_) {
      ++deg[u];
      ++deg[v];
    }
    return deg;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size()) return false;
    auto ea = a.edges_, eb = b.edges_;
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    return ea == eb;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

/// r-uniform hypergraph without multiple edges. Edges are stored flat, each
/// sorted ascending, in insertion order. Rank 1 only arises as the link of a
/// rank-2 hypergraph.
class UniformHypergraph {
 public:
  UniformHypergraph() = default;

  UniformHypergraph(int rank, int n, const std::vector<std::vector<Vertex>>& edges)
      : rank_(rank), n_(n) {
    if (rank_ < 1) throw Error(Errc::invalid_structure, "rank must be positive");
    if (n_ < 0) throw Error(Errc::invalid_structure, "negative vertex count");
    incidence_.reserve(edges.size() * static_cast<std::size_t>(rank_));
    for (const auto& e : edges) append_edge(e);
    check_distinct();
  }

  int rank() const noexcept { return rank_; }
  int num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept {
    return rank_ == 0 ? 0 : incidence_.size() / static_cast<std::size_t>(rank_);
  }
  bool empty() const noexcept { return incidence_.empty(); }

  std::span<const Vertex> edge(std::size_t i) const {
    return {incidence_.data() + i * static_cast<std::size_t>(rank_),
            static_cast<std::size_t>(rank_)};
  }

  const std::vector<Vertex>& incidence() const noexcept { return incidence_; }

  std::vector<std::vector<Vertex>> edge_list() const {
    std::vector<std::vector<Vertex>> out;
    out.reserve(num_edges());
    for (std::size_t i = 0; i < num_edges(); ++i) {
      auto e = edge(i);
      out.emplace_back(e.begin(), e.end());
    }
    return out;
  }

  /// Edges in lexicographic order, the order used by the text format.
  std::vector<std::vector<Vertex>> sorted_edge_list() const {
    auto out = edge_list();
    std::sort(out.begin(), out.end());
    return out;
  }

  bool has_edge(std::vector<Vertex> e) const {
    std::sort(e.begin(), e.end());
    for (std::size_t i = 0; i < num_edges(); ++i) {
      auto f = edge(i);
      if (std::equal(f.begin(), f.end(), e.begin(), e.end())) return true;
    }
    return false;
  }

  std::vector<int> degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(n_), 0);
    for (Vertex v : incidence_) ++deg[v];
    return deg;
  }

  /// True when the vertices that lie in some edge induce a connected hypergraph.
  bool connected_ignoring_isolated() const {
    if (empty()) return true;
    std::vector<int> parent(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) parent[i] = i;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t i = 0; i < num_edges(); ++i) {
      auto e = edge(i);
      for (std::size_t j = 1; j < e.size(); ++j) parent[find(e[j])] = find(e[0]);
    }
    const int root = find(incidence_.front());
    for (Vertex v : incidence_)
      if (find(v) != root) return false;
    return true;
  }

  UniformHypergraph with_edge(const std::vector<Vertex>& e) const {
    auto edges = edge_list();
    edges.push_back(e);
    return UniformHypergraph(rank_, n_, edges);
  }

  UniformHypergraph with_isolated_vertices(int count) const {
    return UniformHypergraph(rank_, n_ + count, edge_list());
  }

  friend bool operator==(const UniformHypergraph& a, const UniformHypergraph& b) {
    return a.rank_ == b.rank_ && a.n_ == b.n_ && a.sorted_edge_list() == b.sorted_edge_list();
  }

 private:
  void append_edge(std::vector<Vertex> e) {
    if (static_cast<int>(e.size()) != rank_)
      throw Error(Errc::invalid_structure, "edge size differs from rank");
    std::sort(e.begin(), e.end());
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] < 0 || e[j] >= n_) throw Error(Errc::invalid_structure, "vertex out of range");
      if (j > 0 && e[j] == e[j - 1])
        throw Error(Errc::invalid_structure, "repeated vertex inside an edge");
    }
    incidence_.insert(incidence_.end(), e.begin(), e.end());
  }

  void check_distinct() const {
    auto sorted = sorted_edge_list();
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(Errc::multiple_edge, "hypergraph contains a multiple edge");
  }

  int rank_ = 2;
  int n_ = 0;
  std::vector<Vertex> incidence_;
};

inline UniformHypergraph as_hypergraph(const Graph& g) {
  std::vector<std::vector<Vertex>> edges;
  edges.reserve(g.num_edges());
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return UniformHypergraph(2, g.num_vertices(), edges);
}

}  // namespace bergespec
