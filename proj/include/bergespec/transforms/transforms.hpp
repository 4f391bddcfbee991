#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <iterator>
#include <string>
#include <vector>

#include "bergespec/hgraph/operations.hpp"
#include "bergespec/hgraph/types.hpp"

namespace bergespec {

/// Moves edges[i] from `from_vertex` to `to_vertex`: e -> (e \ {from}) + {to}.
struct EdgeMoveSpec {
  std::vector<std::size_t> edges;
  Vertex from_vertex = 0;
  Vertex to_vertex = 0;
};

/// Rewrites the listed edges; throws multiple_edge when a rewritten edge
/// collides with an existing edge or with another rewritten one.
inline UniformHypergraph move_edges(const UniformHypergraph& h, const EdgeMoveSpec& spec) {
  const Vertex v = spec.from_vertex, u = spec.to_vertex;
  const int n = h.num_vertices();
  if (v < 0 || v >= n || u < 0 || u >= n)
    throw Error(Errc::invalid_structure, "move endpoints out of range");
  if (!spec.edges.empty() && u == v)
    throw Error(Errc::invalid_structure, "cannot move edges onto the same vertex");
  auto edges = h.edge_list();
  std::vector<char> picked(edges.size(), 0);
  for (std::size_t i : spec.edges) {
    if (i >= edges.size()) throw Error(Errc::invalid_structure, "edge index out of range");
    if (picked[i]) throw Error(Errc::invalid_structure, "edge listed twice");
    picked[i] = 1;
    auto& e = edges[i];
    if (std::find(e.begin(), e.end(), v) == e.end())
      throw Error(Errc::invalid_structure, "moved edge does not contain the source vertex");
    if (std::find(e.begin(), e.end(), u) != e.end())
      throw Error(Errc::invalid_structure, "moved edge already contains the target vertex");
    std::replace(e.begin(), e.end(), v, u);
  }
  return UniformHypergraph(h.rank(), n, edges);
}

/// Deletes u and reattaches each f in L(u) as f + {v}. Vertices above u shift
/// down by one, so the result has n-1 vertices.
inline UniformHypergraph merge_vertex(const UniformHypergraph& h, Vertex u, Vertex v) {
  const int n = h.num_vertices();
  if (u < 0 || u >= n || v < 0 || v >= n || u == v)
    throw Error(Errc::invalid_structure, "merge needs two distinct vertices in range");
  auto lu = link_sets(h, u);
  auto lv = link_sets(h, v);
  for (const auto& f : lu)
    if (std::find(f.begin(), f.end(), v) != f.end())
      throw Error(Errc::shared_edge, "u and v lie in a common edge");
  std::sort(lu.begin(), lu.end());
  std::sort(lv.begin(), lv.end());
  std::vector<std::vector<Vertex>> common;
  std::set_intersection(lu.begin(), lu.end(), lv.begin(), lv.end(), std::back_inserter(common));
  if (!common.empty()) throw Error(Errc::shared_link, "links of u and v intersect");

  auto shift = [u](Vertex w) { return w > u ? w - 1 : w; };
  std::vector<std::vector<Vertex>> out;
  for (const auto& e : h.edge_list()) {
    std::vector<Vertex> f;
    for (Vertex w : e) f.push_back(w == u ? v : w);
    for (Vertex& w : f) w = shift(w);
    out.push_back(std::move(f));
  }
  return UniformHypergraph(h.rank(), n - 1, out);
}

struct PendantPath {
  std::vector<Vertex> vertices;  // root first, tail last
  int length() const { return static_cast<int>(vertices.size()) - 1; }
};

/// Walks from `tail` back to `root` through vertices of degree two. A tail
/// equal to the root is the empty path.
inline PendantPath pendant_path(const Graph& g, Vertex root, Vertex tail) {
  const int n = g.num_vertices();
  if (root < 0 || root >= n || tail < 0 || tail >= n)
    throw Error(Errc::no_pendant_paths, "vertex out of range");
  PendantPath path;
  if (tail == root) {
    path.vertices = {root};
    return path;
  }
  auto adj = g.adjacency();
  if (adj[tail].size() != 1)
    throw Error(Errc::no_pendant_paths, "tail " + std::to_string(tail) + " is not a leaf");
  std::vector<Vertex> walk{tail};
  Vertex prev = -1, cur = tail;
  while (cur != root) {
    if (cur != tail && adj[cur].size() != 2)
      throw Error(Errc::no_pendant_paths, "path from tail " + std::to_string(tail) +
                                              " meets a branch vertex before the root");
    Vertex next = adj[cur][0] == prev && adj[cur].size() > 1 ? adj[cur][1] : adj[cur][0];
    prev = cur;
    cur = next;
    walk.push_back(cur);
    if (static_cast<int>(walk.size()) > n)
      throw Error(Errc::no_pendant_paths, "walk from tail never reaches the root");
  }
  path.vertices.assign(walk.rbegin(), walk.rend());
  return path;
}

struct PathExchangeResult {
  Graph graph;
  Vertex tail_a = 0;  // tails of the two paths afterwards
  Vertex tail_b = 0;
};

/// G(u; k+1, s-1) -> G(u; k, s): the tail vertex of the longer pendant path is
/// re-hung from the end of the shorter one. Paths already within one of each
/// other are returned unchanged.
inline PathExchangeResult path_exchange_step(const Graph& g, Vertex root, Vertex tail_a, Vertex tail_b) {
  if (tail_a == root && tail_b == root)
    throw Error(Errc::no_pendant_paths, "both designated paths are empty");
  const PendantPath pa = pendant_path(g, root, tail_a);
  const PendantPath pb = pendant_path(g, root, tail_b);
  if (pa.length() > 0 && pb.length() > 0 && pa.vertices[1] == pb.vertices[1])
    throw Error(Errc::no_pendant_paths, "the two tails lie on the same pendant path");
  PathExchangeResult out{g, tail_a, tail_b};
  if (std::abs(pa.length() - pb.length()) <= 1) return out;

  const bool a_longer = pa.length() > pb.length();
  const PendantPath& longer = a_longer ? pa : pb;
  const PendantPath& shorter = a_longer ? pb : pa;
  const Vertex moved = longer.vertices.back();
  const Vertex old_parent = longer.vertices[longer.vertices.size() - 2];
  const Vertex new_parent = shorter.vertices.back();
  std::vector<Graph::Edge> edges;
  for (auto e : g.edges())
    if (!(e == Graph::Edge{std::min(moved, old_parent), std::max(moved, old_parent)}))
      edges.push_back(e);
  edges.emplace_back(std::min(moved, new_parent), std::max(moved, new_parent));
  out.graph = Graph(g.num_vertices(), edges);
  (a_longer ? out.tail_a : out.tail_b) = old_parent;
  (a_longer ? out.tail_b : out.tail_a) = moved;
  return out;
}

inline Graph path_exchange(const Graph& g, Vertex root, Vertex tail_a, Vertex tail_b) {
  return path_exchange_step(g, root, tail_a, tail_b).graph;
}

}  // namespace bergespec
