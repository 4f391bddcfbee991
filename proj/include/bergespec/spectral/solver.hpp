#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "bergespec/hgraph/types.hpp"
#include "bergespec/spectral/polynomial.hpp"
#include "bergespec/spectral/random.hpp"

namespace bergespec {

struct SolverOptions {
  double tol = 1e-10;        // eigenequation residual accepted as converged
  int restarts = 64;         // seeded starting points
  long max_iters = 100000;   // ascent iterations per start
  std::uint64_t seed = 1;
  double tie_eps = 1e-7;     // slack for equality / strictness judgments
  /// Up to this many vertices, solves with p <= r-1 also start from every
  /// admissible support (the maximiser may sit on the boundary there).
  int support_enumeration_limit = 8;
};

struct SpectralEstimate {
  double lambda = 0.0;
  WeightVector witness;
  double residual = 0.0;
  long iterations = 0;
  int restarts_used = 0;
  bool converged = false;
  double p = 0.0;
  std::uint64_t seed = 0;
};

namespace detail {

// Maximises P_H over the nonnegative part of the unit p-sphere from one start.
// Three regimes:
//   p > r-1      shifted fixed point x_i <- (g_i + s x_i^(p-1))^(1/(p-1)),
//   1 < p <= r-1 projected gradient ascent with backtracking,
//   p = 1        projected gradient ascent on the simplex,
// each followed by Newton refinement of the eigenequations on the support.
class AscentSolver {
 public:
  AscentSolver(const UniformHypergraph& h, double p, const SolverOptions& opts)
      : h_(h), p_(p), opts_(opts), n_(h.num_vertices()), r_(h.rank()) {}

  struct Result {
    std::vector<double> x;
    double lambda = 0.0;
    double residual = std::numeric_limits<double>::infinity();
    long iterations = 0;
  };

  Result run(std::vector<double> x, const std::vector<char>& mask) {
    Result res;
    // Coarse ascent hands over to Newton; if refinement is rejected the
    // ascent resumes with the full target.
    for (double handover : {1e-6, opts_.tol * 1e-2}) {
      if (p_ == 1.0)
        res.iterations += simplex_ascent(x, mask, handover);
      else if (p_ > r_ - 1)
        res.iterations += fixed_point(x, mask, handover);
      else
        res.iterations += sphere_ascent(x, mask, handover);
      const double before = value(x);
      std::vector<double> polished = x;
      if (newton_polish(polished) && value(polished) >= before - 1e-9 * std::max(1.0, before)) {
        x = std::move(polished);
        break;
      }
    }
    res.lambda = value(x);
    res.residual = residual(x, res.lambda);
    res.x = std::move(x);
    return res;
  }

  double value(const std::vector<double>& x) const { return polynomial_form(h_, x); }

  double residual(const std::vector<double>& x, double lambda) {
    gradient_into(h_, x, grad_);
    double worst = 0.0;
    for (int i = 0; i < n_; ++i) {
      if (!(x[i] > 0)) continue;
      worst = std::max(worst, std::abs(grad_[i] / r_ - lambda * power_m1(x[i])));
    }
    return worst;
  }

 private:
  // residual on the support from an already computed gradient
  double support_residual(const std::vector<double>& x, double lambda) const {
    double worst = 0.0;
    for (int i = 0; i < n_; ++i)
      if (x[i] > 0) worst = std::max(worst, std::abs(grad_[i] / r_ - lambda * power_m1(x[i])));
    return worst;
  }

  double power_m1(double xi) const { return p_ == 1.0 ? 1.0 : std::pow(xi, p_ - 1.0); }

  long fixed_point(std::vector<double>& x, const std::vector<char>& mask, double target) {
    std::vector<double> y(x.size());
    const double inv = 1.0 / (p_ - 1.0);
    double fx = value(x);
    double step = 1.0;
    long it = 0;
    for (; it < opts_.max_iters; ++it) {
      gradient_into(h_, x, grad_);
      if (support_residual(x, fx) <= target) break;
      // the shift damps the period-two oscillation of bipartite-like structure
      const double shift = 0.5 * fx;
      for (int i = 0; i < n_; ++i) y[i] = std::pow(grad_[i] / r_ + shift * power_m1(x[i]), inv);
      normalize_p(y, p_);
      const double fy = value(y);
      double moved = 0.0;
      for (int i = 0; i < n_; ++i) moved = std::max(moved, std::abs(y[i] - x[i]));
      if (moved < 1e-16) break;
      // strict: a symmetric swap keeps P equal and would cycle forever
      if (fy > fx) {
        x.swap(y);
        fx = fy;
        continue;
      }
      // not monotone here (exponent above one for p < 2): fall back to a
      // tangential step
      if (!tangent_step(x, mask, fx, step)) break;
    }
    return it;
  }

  // One backtracking step along grad/r - lambda x^(p-1) on the nonnegative
  // p-sphere. Expects grad_ at x. Returns false when no ascent is possible.
  bool tangent_step(std::vector<double>& x, const std::vector<char>& mask, double& fx, double& step) {
    std::vector<double>& y = scratch_;
    y.resize(x.size());
    while (step > 1e-18) {
      for (int i = 0; i < n_; ++i)
        y[i] = mask[i] ? std::max(0.0, x[i] + step * (grad_[i] / r_ - fx * power_m1(x[i]))) : 0.0;
      normalize_p(y, p_);
      const double fy = value(y);
      if (fy > fx) {
        x.swap(y);
        fx = fy;
        step *= 1.5;
        return true;
      }
      step *= 0.5;
    }
    return false;
  }

  long sphere_ascent(std::vector<double>& x, const std::vector<char>& mask, double target) {
    double fx = value(x);
    double step = 1.0;
    long it = 0;
    int quiet = 0;
    for (; it < opts_.max_iters; ++it) {
      gradient_into(h_, x, grad_);
      if (support_residual(x, fx) <= target) break;
      const double before = fx;
      if (!tangent_step(x, mask, fx, step)) break;
      quiet = (fx - before <= 1e-15 * std::max(1.0, fx)) ? quiet + 1 : 0;
      if (quiet >= 20) break;
    }
    return it;
  }

  long simplex_ascent(std::vector<double>& x, const std::vector<char>& mask, double target) {
    std::vector<double> y(x.size());
    double fx = value(x);
    double step = 1.0;
    long it = 0;
    int quiet = 0;
    for (; it < opts_.max_iters; ++it) {
      gradient_into(h_, x, grad_);
      if (support_residual(x, fx) <= target) break;
      bool accepted = false;
      while (step > 1e-18) {
        for (int i = 0; i < n_; ++i) y[i] = x[i] + step * grad_[i];
        project_simplex(y, mask);
        const double fy = value(y);
        if (fy > fx) {
          quiet = (fy - fx <= 1e-15 * std::max(1.0, fx)) ? quiet + 1 : 0;
          x.swap(y);
          fx = fy;
          step *= 1.5;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted || quiet >= 20) break;
    }
    return it;
  }

  // Euclidean projection of the masked coordinates onto the unit simplex.
  static void project_simplex(std::vector<double>& y, const std::vector<char>& mask) {
    std::vector<double> v;
    for (std::size_t i = 0; i < y.size(); ++i)
      if (mask[i]) v.push_back(y[i]);
    std::sort(v.begin(), v.end(), std::greater<>());
    double cumulative = 0.0, theta = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      cumulative += v[k];
      const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
      if (v[k] - t > 0) theta = t;
    }
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = mask[i] ? std::max(0.0, y[i] - theta) : 0.0;
  }

  // Newton on {grad_i/r = lambda x_i^(p-1) (i in S), sum_S x_i^p = 1} with a
  // minimum-norm step, so flat families of maximisers do not stall it.
  bool newton_polish(std::vector<double>& x) {
    double top = 0.0;
    for (double v : x) top = std::max(top, v);
    if (!(top > 0)) return false;
    std::vector<int> support;
    for (int i = 0; i < n_; ++i) {
      if (x[i] > 1e-9 * top)
        support.push_back(i);
      else
        x[i] = 0.0;
    }
    const int k = static_cast<int>(support.size());
    normalize_p(x, p_);
    double lambda = value(x);
    Eigen::MatrixXd jac(k + 1, k + 1);
    Eigen::VectorXd f(k + 1);
    for (int iter = 0; iter < 60; ++iter) {
      gradient_into(h_, x, grad_);
      const auto hess = hessian(h_, x);
      double norm_sum = 0.0;
      for (int a = 0; a < k; ++a) {
        const int i = support[a];
        f(a) = grad_[i] / r_ - lambda * power_m1(x[i]);
        for (int b = 0; b < k; ++b) jac(a, b) = hess[static_cast<std::size_t>(i) * n_ + support[b]] / r_;
        if (p_ != 1.0) jac(a, a) -= lambda * (p_ - 1.0) * std::pow(x[i], p_ - 2.0);
        jac(a, k) = -power_m1(x[i]);
        jac(k, a) = p_ * power_m1(x[i]);
        norm_sum += std::pow(x[i], p_);
      }
      f(k) = norm_sum - 1.0;
      jac(k, k) = 0.0;
      if (f.cwiseAbs().maxCoeff() < 1e-15) break;
      Eigen::VectorXd delta = jac.completeOrthogonalDecomposition().solve(-f);
      if (!delta.allFinite()) return false;
      double t = 1.0;
      int halvings = 0;
      while (true) {
        bool positive = true;
        for (int a = 0; a < k; ++a)
          if (!(x[support[a]] + t * delta(a) > 0)) positive = false;
        if (positive) break;
        if (++halvings > 40) return false;
        t *= 0.5;
      }
      for (int a = 0; a < k; ++a) x[support[a]] += t * delta(a);
      lambda += t * delta(k);
      if (t * delta.cwiseAbs().maxCoeff() < 1e-17) break;
    }
    normalize_p(x, p_);
    return residual(x, value(x)) <= opts_.tol;
  }

  const UniformHypergraph& h_;
  double p_;
  const SolverOptions& opts_;
  int n_;
  int r_;
  std::vector<double> grad_;
  std::vector<double> scratch_;
};

/// Supports S on which a local maximiser can live: every vertex of S lies in
/// an edge inside S, and for p > 1 no outside vertex completes an edge with
/// S (it would have positive gradient at zero weight).
inline std::vector<std::uint32_t> admissible_supports(const UniformHypergraph& h, double p) {
  const int n = h.num_vertices();
  std::vector<std::uint32_t> edge_masks;
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    std::uint32_t m = 0;
    for (Vertex v : h.edge(e)) m |= 1u << v;
    edge_masks.push_back(m);
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    std::uint32_t covered = 0;
    bool closed = true;
    for (std::uint32_t em : edge_masks) {
      if ((em & s) == em) covered |= em;
      const std::uint32_t outside = em & ~s;
      if (p > 1.0 && outside != 0 && (outside & (outside - 1)) == 0) closed = false;
    }
    if (covered == s && closed) out.push_back(s);
  }
  return out;
}

}  // namespace detail

/// lambda^(p)(H): best local maximum of P_H over the nonnegative unit p-sphere
/// across seeded restarts. Ties keep the earliest start.
inline SpectralEstimate p_spectral_radius(const UniformHypergraph& h, double p,
                                          const SolverOptions& opts = {}) {
  if (!(p >= 1.0)) throw Error(Errc::parameter_domain, "p must be at least 1");
  if (h.rank() > 15) throw Error(Errc::parameter_domain, "rank above 15 unsupported");
  SpectralEstimate est;
  est.p = p;
  est.seed = opts.seed;
  est.witness.p = p;
  const int n = h.num_vertices();
  if (h.empty()) {
    est.converged = true;
    return est;
  }

  const auto deg = h.degrees();
  std::vector<char> active(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) active[i] = deg[i] > 0;

  std::vector<std::vector<double>> starts;
  std::vector<std::vector<char>> masks;
  auto push_start = [&](std::vector<double> x, std::vector<char> mask) {
    normalize_p(x, p);
    starts.push_back(std::move(x));
    masks.push_back(std::move(mask));
  };
  for (int k = 0; k < std::max(1, opts.restarts); ++k) {
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(k)));
    for (int i = 0; i < n; ++i)
      if (active[i]) x[i] = k == 0 ? 1.0 : 1.0 - rng.uniform();
    push_start(std::move(x), active);
  }
  if (p <= h.rank() - 1 && n <= opts.support_enumeration_limit && n <= 20) {
    for (std::uint32_t s : detail::admissible_supports(h, p)) {
      std::vector<double> x(static_cast<std::size_t>(n), 0.0);
      std::vector<char> mask(static_cast<std::size_t>(n), 0);
      for (int i = 0; i < n; ++i)
        if (s >> i & 1u) x[i] = mask[i] = 1;
      push_start(std::move(x), std::move(mask));
    }
  }

  detail::AscentSolver solver(h, p, opts);
  bool have = false;
  detail::AscentSolver::Result best;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    auto res = solver.run(starts[k], masks[k]);
    est.iterations += res.iterations;
    if (!have) {
      best = std::move(res);
      have = true;
      continue;
    }
    const double scale = std::max(1.0, best.lambda);
    const bool better = res.lambda > best.lambda + 1e-12 * scale;
    const bool as_good_and_cleaner = std::abs(res.lambda - best.lambda) <= 1e-12 * scale &&
                                     best.residual > opts.tol && res.residual <= opts.tol;
    if (better || as_good_and_cleaner) best = std::move(res);
  }
  est.restarts_used = static_cast<int>(starts.size());
  est.lambda = best.lambda;
  est.residual = best.residual;
  est.witness.entries = std::move(best.x);
  est.converged = est.residual <= opts.tol;
  if (est.converged && p > h.rank() - 1 && h.connected_ignoring_isolated() && est.lambda > 0) {
    // The maximiser is positive here. A zero entry is only acceptable when the
    // eigenequation puts its true value below the polish support threshold
    // (deep pendant paths at p < 2 decay doubly exponentially).
    const auto& x = est.witness.entries;
    const double top = *std::max_element(x.begin(), x.end());
    const auto g = gradient(h, x);
    for (int i = 0; i < n; ++i) {
      if (!active[i] || x[i] > 0) continue;
      const double implied = std::pow(g[i] / (h.rank() * est.lambda), 1.0 / (p - 1.0));
      if (implied > 1e-9 * top) est.converged = false;
    }
  }
  return est;
}

inline SpectralEstimate p_spectral_radius(const Graph& g, double p, const SolverOptions& opts = {}) {
  return p_spectral_radius(as_hypergraph(g), p, opts);
}

struct MonotoneScanPoint {
  double p = 0.0;
  double lambda = 0.0;
  double normalized = 0.0;  // (lambda / (r m))^p
  bool converged = false;
};

/// Solves along an ascending p grid; the normalized column is nonincreasing.
inline std::vector<MonotoneScanPoint> lambda_p_monotone_scan(const UniformHypergraph& h,
                                                             const std::vector<double>& p_grid,
                                                             const SolverOptions& opts = {}) {
  if (!std::is_sorted(p_grid.begin(), p_grid.end()))
    throw Error(Errc::parameter_domain, "p grid must be ascending");
  const double rm = static_cast<double>(h.rank()) * static_cast<double>(h.num_edges());
  std::vector<MonotoneScanPoint> out;
  for (double p : p_grid) {
    const auto est = p_spectral_radius(h, p, opts);
    out.push_back({p, est.lambda, rm > 0 ? std::pow(est.lambda / rm, p) : 0.0, est.converged});
  }
  return out;
}

}  // namespace bergespec
