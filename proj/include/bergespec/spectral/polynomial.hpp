#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "bergespec/hgraph/types.hpp"

namespace bergespec {

/// Nonnegative weights on the vertices, normalised in the p-norm.
struct WeightVector {
  std::vector<double> entries;
  double p = 2.0;

  std::size_t size() const noexcept { return entries.size(); }
  double operator[](std::size_t i) const { return entries[i]; }
};

inline double p_norm(std::span<const double> x, double p) {
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v), p);
  return std::pow(s, 1.0 / p);
}

inline void normalize_p(std::span<double> x, double p) {
  const double norm = p_norm(x, p);
  if (norm > 0)
    for (double& v : x) v /= norm;
}

namespace detail {

inline void check_length(const UniformHypergraph& h, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(h.num_vertices()))
    throw Error(Errc::length_mismatch, "weight vector has " + std::to_string(x.size()) +
                                           " entries for " + std::to_string(h.num_vertices()) +
                                           " vertices");
}

}  // namespace detail

/// P_H(x) = r * sum over edges of the product of their coordinates.
inline double polynomial_form(const UniformHypergraph& h, std::span<const double> x) {
  detail::check_length(h, x);
  const auto& inc = h.incidence();
  const std::size_t r = static_cast<std::size_t>(h.rank());
  double sum = 0.0;
  for (std::size_t off = 0; off < inc.size(); off += r) {
    double prod = 1.0;
    for (std::size_t j = 0; j < r; ++j) prod *= x[inc[off + j]];
    sum += prod;
  }
  return static_cast<double>(r) * sum;
}

/// Writes dP_H/dx into `out` (resized to n).
inline void gradient_into(const UniformHypergraph& h, std::span<const double> x,
                          std::vector<double>& out) {
  const auto& inc = h.incidence();
  const std::size_t r = static_cast<std::size_t>(h.rank());
  out.assign(x.size(), 0.0);
  double prefix[16];
  for (std::size_t off = 0; off < inc.size(); off += r) {
    // prefix products avoid dividing by coordinates that may be zero
    prefix[0] = 1.0;
    for (std::size_t j = 0; j < r; ++j) prefix[j + 1] = prefix[j] * x[inc[off + j]];
    double suffix = 1.0;
    for (std::size_t j = r; j-- > 0;) {
      out[inc[off + j]] += prefix[j] * suffix;
      suffix *= x[inc[off + j]];
    }
  }
  for (double& g : out) g *= static_cast<double>(r);
}

inline std::vector<double> gradient(const UniformHypergraph& h, std::span<const double> x) {
  detail::check_length(h, x);
  if (h.rank() > 15) throw Error(Errc::parameter_domain, "rank above 15 unsupported");
  std::vector<double> out;
  gradient_into(h, x, out);
  return out;
}

/// Dense Hessian of P_H, row-major n x n.
inline std::vector<double> hessian(const UniformHypergraph& h, std::span<const double> x) {
  detail::check_length(h, x);
  const std::size_t n = x.size();
  const std::size_t r = static_cast<std::size_t>(h.rank());
  std::vector<double> out(n * n, 0.0);
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    auto edge = h.edge(e);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) {
        if (a == b) continue;
        double prod = 1.0;
        for (std::size_t c = 0; c < r; ++c)
          if (c != a && c != b) prod *= x[edge[c]];
        out[edge[a] * n + edge[b]] += static_cast<double>(r) * prod;
      }
  }
  return out;
}

/// Largest violation of grad_i(x)/r = lambda * x_i^(p-1) over the support of x.
inline double eigen_residual(const UniformHypergraph& h, double p, double lambda,
                             std::span<const double> x) {
  auto g = gradient(h, x);
  const double r = h.rank();
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0)) continue;
    const double rhs = p == 1.0 ? lambda : lambda * std::pow(x[i], p - 1.0);
    worst = std::max(worst, std::abs(g[i] / r - rhs));
  }
  return worst;
}

inline double eigen_residual(const UniformHypergraph& h, double lambda, const WeightVector& x) {
  return eigen_residual(h, x.p, lambda, x.entries);
}

}  // namespace bergespec
