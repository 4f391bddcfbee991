#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bergespec/hgraph/types.hpp"

// Named graphs. Vertex 0 is the distinguished root wherever a family has one
// (star center, the vertex carrying pendant paths, the gluing vertex).

namespace bergespec::families {

namespace detail {

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(Errc::parameter_domain, msg);
}

/// Appends a pendant path of `length` edges hanging off `root`.
inline void append_path(std::vector<Graph::Edge>& edges, int& n, Vertex root, int length) {
  Vertex prev = root;
  for (int i = 0; i < length; ++i) {
    edges.push_back({prev, n});
    prev = n++;
  }
}

}  // namespace detail

/// P_k: 0-1-...-(k-1).
inline Graph path(int k) {
  detail::require(k >= 1, "path needs k >= 1");
  std::vector<Graph::Edge> edges;
  for (int i = 0; i + 1 < k; ++i) edges.push_back({i, i + 1});
  return Graph(k, edges);
}

inline Graph cycle(int k) {
  detail::require(k >= 3, "cycle needs k >= 3");
  std::vector<Graph::Edge> edges;
  for (int i = 0; i < k; ++i) edges.push_back({i, (i + 1) % k});
  return Graph(k, edges);
}

/// S_k: center 0 and leaves 1..k-1.
inline Graph star(int k) {
  detail::require(k >= 2, "star needs k >= 2");
  std::vector<Graph::Edge> edges;
  for (int i = 1; i < k; ++i) edges.push_back({0, i});
  return Graph(k, edges);
}

/// S_k^+: S_k plus the edge between leaves 1 and 2.
inline Graph star_plus(int k) {
  detail::require(k >= 3, "star_plus needs k >= 3");
  auto edges = star(k).edges();
  edges.push_back({1, 2});
  return Graph(k, edges);
}

/// G(u; a, b): `base` with pendant paths of lengths a and b attached at `root`.
/// The first path takes the next a fresh labels, the second the b after that.
inline Graph attach_two_paths(const Graph& base, Vertex root, int a, int b) {
  detail::require(root >= 0 && root < base.num_vertices(), "root out of range");
  detail::require(a >= 0 && b >= 0, "path lengths must be nonnegative");
  auto edges = base.edges();
  int n = base.num_vertices();
  detail::append_path(edges, n, root, a);
  detail::append_path(edges, n, root, b);
  return Graph(n, edges);
}

/// C_l(u; h, j): cycle 0..l-1 with pendant paths of lengths h and j at vertex 0.
inline Graph cycle_two_paths(int cycle_length, int h, int j) {
  return attach_two_paths(cycle(cycle_length), 0, h, j);
}

/// F(u, v; h, j): cycle 0..l-1 with a pendant path of length h at 0 and one of
/// length j at vertex `second_root`.
inline Graph cycle_two_paths_two_roots(int cycle_length, Vertex second_root, int h, int j) {
  detail::require(second_root >= 0 && second_root < cycle_length, "second root not on the cycle");
  auto edges = cycle(cycle_length).edges();
  int n = cycle_length;
  detail::append_path(edges, n, 0, h);
  detail::append_path(edges, n, second_root, j);
  return Graph(n, edges);
}

/// Delta_1 for parameter k: triangle {0,1,2} with pendant paths of lengths
/// floor((k-4)/2) and ceil((k-4)/2) at 0; k-1 vertices and k-1 edges.
inline Graph delta1(int k) {
  detail::require(k >= 6, "delta1 needs k >= 6");
  return cycle_two_paths(3, (k - 4) / 2, (k - 3) / 2);
}

/// Delta_2 for parameter k: triangle {0,1,2} and a (k-3)-cycle sharing vertex 0;
/// k-1 vertices and k edges.
inline Graph delta2(int k) {
  detail::require(k >= 6, "delta2 needs k >= 6");
  std::vector<Graph::Edge> edges{{0, 1}, {1, 2}, {0, 2}};
  const int len = k - 3;
  Vertex prev = 0;
  for (int i = 0; i + 1 < len; ++i) {
    edges.push_back({prev, 3 + i});
    prev = 3 + i;
  }
  edges.push_back({prev, 0});
  return Graph(k - 1, edges);
}

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{
      "path",    "cycle",  "star",          "star_plus", "delta1", "delta2", "cycle_two_paths",
      "cycle_two_paths_two_roots", "attach_two_paths", "k2"};
  return names;
}

}  // namespace bergespec::families

namespace bergespec {

/// Builds a named family from integer parameters. `attach_two_paths` takes
/// params {root, a, b} and needs `base`.
inline Graph construct_graph(std::string_view family, const std::vector<int>& params,
                             const Graph* base = nullptr) {
  auto want = [&](std::size_t count) {
    if (params.size() != count)
      throw Error(Errc::parameter_domain, std::string(family) + " takes " +
                                              std::to_string(count) + " parameter(s)");
  };
  if (family == "path") return want(1), families::path(params[0]);
  if (family == "cycle") return want(1), families::cycle(params[0]);
  if (family == "star") return want(1), families::star(params[0]);
  if (family == "star_plus") return want(1), families::star_plus(params[0]);
  if (family == "delta1") return want(1), families::delta1(params[0]);
  if (family == "delta2") return want(1), families::delta2(params[0]);
  if (family == "k2") return want(0), families::path(2);
  if (family == "cycle_two_paths")
    return want(3), families::cycle_two_paths(params[0], params[1], params[2]);
  if (family == "cycle_two_paths_two_roots")
    return want(4), families::cycle_two_paths_two_roots(params[0], params[1], params[2], params[3]);
  if (family == "attach_two_paths") {
    want(3);
    if (base == nullptr) throw Error(Errc::parameter_domain, "attach_two_paths needs a base graph");
    return families::attach_two_paths(*base, params[0], params[1], params[2]);
  }
  throw Error(Errc::parameter_domain, "unknown family '" + std::string(family) + "'");
}

}  // namespace bergespec
