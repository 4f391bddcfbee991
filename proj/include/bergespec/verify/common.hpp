#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bergespec/berge/catalog_io.hpp"
#include "bergespec/hgraph/types.hpp"
#include "bergespec/parallel.hpp"
#include "bergespec/spectral/oracle.hpp"
#include "bergespec/spectral/random.hpp"
#include "bergespec/spectral/solver.hpp"
#include "bergespec/verify/report.hpp"

namespace bergespec {

struct VerifyOptions {
  SolverOptions solver;          // solver.seed is the master seed of every harness
  int jobs = 1;
  bool oracle = true;            // cross-check instances small enough for the oracle
  int oracle_top = 5;            // catalog candidates re-solved by the oracle
  int oracle_max_vertices = 6;   // sampled instances above this skip the oracle
  int structural_samples = 10000;
  int structural_restarts = 4;   // connected graphs at p > 1 have a unique positive maximiser
};

namespace verify_detail {

inline void stamp(VerificationReport& r, const std::string& scenario, const VerifyOptions& opts) {
  r.scenario = scenario;
  r.tol = opts.solver.tol;
  r.tie_eps = opts.solver.tie_eps;
  r.seed = opts.solver.seed;
}

// JSON spelling of p, used as an object key ("2.0", "1.5").
inline std::string p_label(double p) {
  ordered_json j = p;
  return j.dump();
}

/// Solves every hypergraph at p; slot i depends only on input i.
inline std::vector<SpectralEstimate> solve_all(const std::vector<UniformHypergraph>& hs, double p,
                                               const SolverOptions& solver, int jobs) {
  std::vector<SpectralEstimate> out(hs.size());
  parallel_for(hs.size(), jobs, [&](std::size_t i) { out[i] = p_spectral_radius(hs[i], p, solver); });
  return out;
}

/// True when one vertex lies in every edge.
inline bool edges_share_vertex(const UniformHypergraph& h) {
  if (h.empty()) return true;
  auto deg = h.degrees();
  return std::any_of(deg.begin(), deg.end(),
                     [&](int d) { return static_cast<std::size_t>(d) == h.num_edges(); });
}

/// m distinct uniformly random r-subsets of {0..n-1}, m uniform in [1, C(n,r)].
inline UniformHypergraph random_hypergraph(Rng& rng, int r, int n) {
  std::vector<std::vector<Vertex>> all;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    if (__builtin_popcount(s) != r) continue;
    std::vector<Vertex> e;
    for (int i = 0; i < n; ++i)
      if (s >> i & 1u) e.push_back(i);
    all.push_back(std::move(e));
  }
  const std::size_t m = 1 + rng.below(all.size());
  // partial Fisher-Yates keeps the draw independent of any library shuffle
  for (std::size_t i = 0; i < m; ++i) std::swap(all[i], all[i + rng.below(all.size() - i)]);
  all.resize(m);
  return UniformHypergraph(r, n, all);
}

/// Connected r-graph covering all n vertices: edges are added so that each
/// new one meets the covered part and reaches an uncovered vertex, then
/// `extra` further random edges (when available).
inline UniformHypergraph random_connected_hypergraph(Rng& rng, int r, int n, int extra) {
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
  std::set<std::vector<Vertex>> edges;
  std::vector<Vertex> first(order.begin(), order.begin() + r);
  std::sort(first.begin(), first.end());
  edges.insert(first);
  int covered = r;
  while (covered < n) {
    // one old vertex plus up to r-1 new ones, topped up with old vertices
    const int fresh = std::min(r - 1, n - covered);
    std::vector<Vertex> e{order[rng.below(covered)]};
    for (int i = 0; i < fresh; ++i) e.push_back(order[covered + i]);
    while (static_cast<int>(e.size()) < r) {
      Vertex w = order[rng.below(covered)];
      if (std::find(e.begin(), e.end(), w) == e.end()) e.push_back(w);
    }
    covered += fresh;
    std::sort(e.begin(), e.end());
    edges.insert(e);
  }
  for (int t = 0, attempts = 0; t < extra && attempts < 50 * (extra + 1); ++attempts) {
    std::vector<Vertex> e;
    while (static_cast<int>(e.size()) < r) {
      Vertex w = static_cast<Vertex>(rng.below(n));
      if (std::find(e.begin(), e.end(), w) == e.end()) e.push_back(w);
    }
    std::sort(e.begin(), e.end());
    if (edges.insert(e).second) ++t;
  }
  return UniformHypergraph(r, n, std::vector<std::vector<Vertex>>(edges.begin(), edges.end()));
}

/// Uniform labelled tree from a random Pruefer sequence.
inline Graph random_tree(Rng& rng, int n) {
  if (n <= 1) return Graph(std::max(n, 0), {});
  if (n == 2) return Graph(2, {{0, 1}});
  std::vector<int> code(static_cast<std::size_t>(n - 2));
  for (int& c : code) c = static_cast<int>(rng.below(n));
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int c : code) ++degree[c];
  std::vector<Graph::Edge> edges;
  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.insert(v);
  for (int c : code) {
    const int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.push_back({leaf, c});
    if (--degree[c] == 1) leaves.insert(c);
  }
  const int a = *leaves.begin(), b = *std::next(leaves.begin());
  edges.push_back({a, b});
  return Graph(n, edges);
}

/// Random tree plus one random non-edge: connected with exactly one cycle.
inline Graph random_unicyclic(Rng& rng, int n) {
  Graph t = random_tree(rng, n);
  std::vector<Graph::Edge> missing;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!t.has_edge(u, v)) missing.push_back({u, v});
  auto edges = t.edges();
  edges.push_back(missing[rng.below(missing.size())]);
  return Graph(n, edges);
}

/// Random tree on n vertices plus `extra` random extra edges where possible.
inline Graph random_connected_graph(Rng& rng, int n, int extra) {
  Graph t = random_tree(rng, n);
  auto edges = t.edges();
  std::vector<Graph::Edge> missing;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!t.has_edge(u, v)) missing.push_back({u, v});
  for (int i = 0; i < extra && !missing.empty(); ++i) {
    const std::size_t k = rng.below(missing.size());
    edges.push_back(missing[k]);
    missing.erase(missing.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return Graph(n, edges);
}

/// |solver - oracle| when the instance is small enough, else nothing.
inline std::optional<double> oracle_gap(const UniformHypergraph& h, double p, double solver_lambda,
                                        int max_vertices) {
  if (h.num_vertices() > std::min(max_vertices, kOracleMaxVertices)) return std::nullopt;
  return std::abs(oracle_spectral_radius(h, p) - solver_lambda);
}

/// Oracle comparisons for one report, accumulated in a fixed order.
struct OracleTally {
  int checked = 0;
  double max_gap = 0.0;

  void add(const std::optional<double>& gap) {
    if (!gap) return;
    ++checked;
    max_gap = std::max(max_gap, *gap);
  }

  void report(VerificationReport& r) const {
    r.data["oracle_checked"] = checked;
    r.data["oracle_max_gap"] = max_gap;
    if (checked > 0) r.check("oracle_agreement", "le", max_gap, 0.0, 1e-7);
  }
};

}  // namespace verify_detail

}  // namespace bergespec
