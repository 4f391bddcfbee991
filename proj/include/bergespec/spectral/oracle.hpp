#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "bergespec/hgraph/types.hpp"
#include "bergespec/spectral/random.hpp"

// Verification oracle for lambda^(p). Shares no code with the ascent solver:
// on every candidate support it runs the multiplicative update
//   y_i <- x_i g_i(x) / sum_j x_j g_j(x),   x = y^(1/p),
// on the simplex of p-th powers, whose fixed points are exactly the
// eigenequation solutions, and it adds dense random starts on the full
// vertex set. Only small vertex counts are accepted.

namespace bergespec {

namespace oracle_detail {

struct Poly {
  int n = 0;
  int r = 0;
  std::vector<std::vector<int>> edges;

  double value(const std::vector<double>& x) const {
    double s = 0.0;
    for (const auto& e : edges) {
      double prod = 1.0;
      for (int v : e) prod *= x[v];
      s += prod;
    }
    return r * s;
  }

  // x_i * dP/dx_i, computed per edge as r * prod(edge) for each member
  void weighted_gradient(const std::vector<double>& x, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (const auto& e : edges) {
      double prod = 1.0;
      for (int v : e) prod *= x[v];
      for (int v : e) out[v] += r * prod;
    }
  }
};

inline double iterate_support(const Poly& poly, double p, std::vector<double> y, long iterations) {
  const int n = poly.n;
  std::vector<double> x(n), w(n);
  auto to_x = [&] {
    for (int i = 0; i < n; ++i) x[i] = y[i] > 0 ? std::pow(y[i], 1.0 / p) : 0.0;
  };
  double best = 0.0;
  for (long it = 0; it < iterations; ++it) {
    to_x();
    const double val = poly.value(x);
    best = std::max(best, val);
    poly.weighted_gradient(x, w);
    double total = 0.0;
    for (double v : w) total += v;
    if (!(total > 0)) break;
    double moved = 0.0;
    for (int i = 0; i < n; ++i) {
      const double next = w[i] / total;
      moved = std::max(moved, std::abs(next - y[i]));
      y[i] = next;
    }
    if (moved < 1e-16) break;
  }
  to_x();
  return std::max(best, poly.value(x));
}

}  // namespace oracle_detail

inline constexpr int kOracleMaxVertices = 8;

inline double oracle_spectral_radius(const UniformHypergraph& h, double p,
                                     long iterations_per_support = 200000,
                                     int random_starts = 16, std::uint64_t seed = 7) {
  const int n = h.num_vertices();
  if (n > kOracleMaxVertices)
    throw Error(Errc::too_large, "oracle limited to " + std::to_string(kOracleMaxVertices) + " vertices");
  if (!(p >= 1.0)) throw Error(Errc::parameter_domain, "p must be at least 1");
  if (h.empty()) return 0.0;

  oracle_detail::Poly poly{n, h.rank(), h.edge_list()};
  double best = 0.0;
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    // every chosen vertex must lie in an edge inside the support
    std::uint32_t covered = 0;
    for (const auto& e : poly.edges) {
      std::uint32_t em = 0;
      for (int v : e) em |= 1u << v;
      if ((em & s) == em) covered |= em;
    }
    if (covered != s) continue;
    std::vector<double> y(n, 0.0);
    const double share = 1.0 / __builtin_popcount(s);
    for (int i = 0; i < n; ++i)
      if (s >> i & 1u) y[i] = share;
    best = std::max(best, oracle_detail::iterate_support(poly, p, y, iterations_per_support));
  }

  std::vector<char> active(n, 0);
  for (const auto& e : poly.edges)
    for (int v : e) active[v] = 1;
  Rng rng(seed);
  for (int k = 0; k < random_starts; ++k) {
    std::vector<double> y(n, 0.0);
    double total = 0.0;
    for (int i = 0; i < n; ++i)
      if (active[i]) total += (y[i] = 0.05 + rng.uniform());
    for (double& v : y) v /= total;
    best = std::max(best, oracle_detail::iterate_support(poly, p, y, iterations_per_support));
  }
  return best;
}

}  // namespace bergespec
