#pragma once

#include <cmath>

#include "bergespec/hgraph/stats.hpp"
#include "bergespec/hgraph/types.hpp"

namespace bergespec {

/// lambda^(p) of a single r-edge: r^(1 - r/p), attained by the uniform vector.
inline double single_edge_lambda(int r, double p) { return std::pow(r, 1.0 - r / p); }

/// lambda^(p)(S_n) = 2^(1-2/p) (n-1)^(1-1/p).
inline double star_lambda(int n, double p) {
  if (n < 2) throw Error(Errc::parameter_domain, "star needs n >= 2");
  if (!(p >= 1.0)) throw Error(Errc::parameter_domain, "p must be at least 1");
  return std::pow(2.0, 1.0 - 2.0 / p) * std::pow(n - 1.0, 1.0 - 1.0 / p);
}

/// lambda^(2)(S_{n-1}^+): largest root of x^3 - x^2 - (n-2)x + n - 4.
inline double star_plus_lambda_p2(int n) {
  if (n < 5) throw Error(Errc::parameter_domain, "star_plus_lambda_p2 needs n >= 5");
  const double b = n - 2.0, c = n - 4.0;
  auto f = [&](double x) { return ((x - 1.0) * x - b) * x + c; };
  auto df = [&](double x) { return (3.0 * x - 2.0) * x - b; };
  // f is increasing and convex on [sqrt(n-2), n-1], which brackets the root
  double lo = std::sqrt(b), hi = n - 1.0;
  double x = hi;
  for (int it = 0; it < 200; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    (fx > 0 ? hi : lo) = x;
    double next = x - fx / df(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * x) return next;
    x = next;
  }
  return x;
}

/// lambda^(p)(H * K_1) / lambda^(p)(H) for rank-r H.
inline double suspension_factor(int r, double p) {
  if (r < 2) throw Error(Errc::parameter_domain, "suspension_factor needs r >= 2");
  if (!(p >= 1.0)) throw Error(Errc::parameter_domain, "p must be at least 1");
  return std::pow(r + 1.0, 1.0 - (r + 1.0) / p) / std::pow(static_cast<double>(r), 1.0 - r / p);
}

/// lambda^(1)(G) = 1 - 1/omega(G); 0 for an edgeless graph.
inline double motzkin_straus_lambda1(const Graph& g) {
  if (g.num_edges() == 0) return 0.0;
  return 1.0 - 1.0 / clique_number(g);
}

}  // namespace bergespec
