#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "bergespec/hgraph/families.hpp"
#include "bergespec/hgraph/operations.hpp"
#include "bergespec/parallel.hpp"
#include "bergespec/spectral/closed_form.hpp"
#include "bergespec/spectral/oracle.hpp"
#include "bergespec/spectral/polynomial.hpp"
#include "bergespec/spectral/solver.hpp"
#include "bergespec/verify/common.hpp"

using namespace bergespec;

namespace {

using Edges = std::vector<std::vector<Vertex>>;

const UniformHypergraph kEdge3(3, 3, Edges{{0, 1, 2}});

Graph complete(int n) {
  std::vector<Graph::Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(n, e);
}

std::vector<double> random_point(Rng& rng, int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (double& v : x) v = rng.uniform();
  return x;
}

double adjacency_radius(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.num_vertices(), g.num_vertices());
  for (auto [u, v] : g.edges()) a(u, v) = a(v, u) = 1.0;
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues().maxCoeff();
}

}  // namespace

TEST(Polynomial, SingleEdgeUniform) {
  const std::vector<double> x(3, 1.0 / 3.0);
  EXPECT_NEAR(polynomial_form(kEdge3, x), 1.0 / 9.0, 1e-15);
  EXPECT_EQ(polynomial_form(kEdge3, std::vector<double>(3, 0.0)), 0.0);
}

TEST(Polynomial, TriangleUniformMatchesCliqueValue) {
  const auto k3 = as_hypergraph(families::cycle(3));
  EXPECT_NEAR(polynomial_form(k3, std::vector<double>(3, 1.0 / 3.0)), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(motzkin_straus_lambda1(families::cycle(3)), 2.0 / 3.0, 1e-15);
}

TEST(Polynomial, LengthMismatch) {
  try {
    polynomial_form(kEdge3, std::vector<double>(2, 0.5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::length_mismatch);
  }
  EXPECT_THROW(gradient(kEdge3, std::vector<double>(4, 0.5)), Error);
}

TEST(Gradient, ProductRule) {
  const std::vector<double> x{0.2, 0.3, 0.7};
  const auto g = gradient(kEdge3, x);
  EXPECT_NEAR(g[0], 3 * 0.3 * 0.7, 1e-15);
  EXPECT_NEAR(g[1], 3 * 0.2 * 0.7, 1e-15);
  EXPECT_NEAR(g[2], 3 * 0.2 * 0.3, 1e-15);
}

TEST(Gradient, AllOnesGivesScaledDegrees) {
  const auto h = expansion(families::cycle(5), 3).with_edge({0, 2, 4});
  const auto g = gradient(h, std::vector<double>(h.num_vertices(), 1.0));
  const auto deg = h.degrees();
  for (int i = 0; i < h.num_vertices(); ++i) EXPECT_DOUBLE_EQ(g[i], 3.0 * deg[i]);
}

TEST(Gradient, FiniteDifferencesHomogeneityEuler) {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const int r = 2 + static_cast<int>(rng.below(3));
    const int n = r + 1 + static_cast<int>(rng.below(4));
    const auto h = verify_detail::random_hypergraph(rng, r, n);
    auto x = random_point(rng, n);
    const auto g = gradient(h, x);
    double euler = 0.0;
    for (int i = 0; i < n; ++i) {
      euler += x[i] * g[i];
      auto plus = x, minus = x;
      plus[i] += 1e-6;
      minus[i] -= 1e-6;
      const double fd = (polynomial_form(h, plus) - polynomial_form(h, minus)) / 2e-6;
      EXPECT_LE(std::abs(fd - g[i]), 1e-6 * std::max(1.0, std::abs(g[i])));
    }
    const double f = polynomial_form(h, x);
    EXPECT_LE(std::abs(euler - r * f), 1e-12 * std::max(1.0, r * f));
    auto scaled = x;
    for (double& v : scaled) v *= 1.7;
    EXPECT_NEAR(polynomial_form(h, scaled), std::pow(1.7, r) * f, 1e-12 * std::max(1.0, f));
  }
}

TEST(Residual, ExactStarEigenpair) {
  for (int n : {3, 5, 10}) {
    const auto s = as_hypergraph(families::star(n));
    std::vector<double> x(static_cast<std::size_t>(n), 1.0 / std::sqrt(2.0 * (n - 1)));
    x[0] = 1.0 / std::sqrt(2.0);
    EXPECT_LE(eigen_residual(s, 2.0, std::sqrt(n - 1.0), x), 1e-12);
  }
}

TEST(Residual, PerturbedWitnessExceedsTolerance) {
  const auto h = suspension(families::delta1(6), 1);
  const auto est = p_spectral_radius(h, 3.0);
  ASSERT_TRUE(est.converged);
  EXPECT_LE(eigen_residual(h, est.lambda, est.witness), SolverOptions{}.tol);
  auto x = est.witness.entries;
  x[0] += 0.01;
  normalize_p(x, 3.0);
  EXPECT_GT(eigen_residual(h, 3.0, est.lambda, x), SolverOptions{}.tol);
}

TEST(Solver, SingleEdgeClosedForm) {
  for (int r : {2, 3, 4})
    for (double p : {1.0, 1.5, 2.0, 3.0, 7.0}) {
      std::vector<Vertex> e(static_cast<std::size_t>(r));
      for (int i = 0; i < r; ++i) e[i] = i;
      const auto est = p_spectral_radius(UniformHypergraph(r, r, Edges{e}), p);
      EXPECT_TRUE(est.converged);
      EXPECT_NEAR(est.lambda, single_edge_lambda(r, p), 1e-10);
      for (double xi : est.witness.entries) EXPECT_NEAR(xi, std::pow(r, -1.0 / p), 1e-8);
    }
  EXPECT_NEAR(p_spectral_radius(kEdge3, 3.0).lambda, 1.0, 1e-12);
}

TEST(Solver, StarTenAtTwo) {
  const auto est = p_spectral_radius(families::star(10), 2.0);
  EXPECT_TRUE(est.converged);
  EXPECT_NEAR(est.lambda, 3.0, 1e-9);
}

TEST(Solver, StarPlusSuspensionAtOne) {
  for (int k : {5, 6, 8}) {
    const auto est = p_spectral_radius(suspension(families::star_plus(k - 1), 1), 1.0);
    EXPECT_NEAR(est.lambda, 4.0 / 27.0, 1e-9) << k;
  }
}

TEST(Solver, EmptyHypergraphIsZero) {
  const auto est = p_spectral_radius(UniformHypergraph(3, 4, Edges{}), 2.0);
  EXPECT_EQ(est.lambda, 0.0);
  EXPECT_TRUE(est.converged);
  EXPECT_THROW(p_spectral_radius(kEdge3, 0.5), Error);
}

TEST(Solver, ConvergedWitnessIsOnTheSphere) {
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    const auto h = verify_detail::random_hypergraph(rng, 3, 5 + static_cast<int>(rng.below(2)));
    for (double p : {1.0, 2.0, 4.0}) {
      const auto est = p_spectral_radius(h, p);
      ASSERT_TRUE(est.converged);
      EXPECT_NEAR(p_norm(est.witness.entries, p), 1.0, 1e-12);
      EXPECT_LE(est.residual, 1e-10);
      EXPECT_NEAR(polynomial_form(h, est.witness.entries), est.lambda, 1e-10 * std::max(1.0, est.lambda));
    }
  }
}

TEST(Solver, PositiveWitnessAboveRankMinusOne) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto h = verify_detail::random_connected_hypergraph(rng, 3, 6, 2);
    const auto est = p_spectral_radius(h, 3.0);
    ASSERT_TRUE(est.converged);
    for (double xi : est.witness.entries) EXPECT_GT(xi, 1e-12);
  }
}

TEST(Solver, SeedDeterminism) {
  const auto h = suspension(families::cycle(6), 1);
  SolverOptions o;
  o.seed = 99;
  const auto a = p_spectral_radius(h, 1.5, o);
  const auto b = p_spectral_radius(h, 1.5, o);
  EXPECT_EQ(a.lambda, b.lambda);
  EXPECT_EQ(a.witness.entries, b.witness.entries);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Solver, EdgeMonotonicityAndIsolatedVertices) {
  Rng rng(13);
  const double eps = SolverOptions{}.tie_eps;
  for (int t = 0; t < 15; ++t) {
    const auto h = verify_detail::random_hypergraph(rng, 3, 5);
    if (h.num_edges() == 10) continue;
    std::vector<Vertex> e;
    do {
      e.clear();
      while (e.size() < 3) {
        const Vertex w = static_cast<Vertex>(rng.below(5));
        if (std::find(e.begin(), e.end(), w) == e.end()) e.push_back(w);
      }
    } while (h.has_edge(e));
    for (double p : {1.0, 2.0, 3.0}) {
      const double base = p_spectral_radius(h, p).lambda;
      EXPECT_GE(p_spectral_radius(h.with_edge(e), p).lambda, base - eps);
      EXPECT_NEAR(p_spectral_radius(h.with_isolated_vertices(1), p).lambda, base, eps);
    }
  }
}

TEST(Solver, BoundsByEdgeCount) {
  for (int n : {3, 4, 5}) {
    const auto k = as_hypergraph(complete(n));
    const double rm = 2.0 * k.num_edges();
    for (double p : {1.0, 3.0, 20.0}) EXPECT_LE(p_spectral_radius(k, p).lambda, rm + 1e-9);
    EXPECT_GE(p_spectral_radius(k, 100.0).lambda / rm, 0.9);
  }
}

TEST(Solver, PathThreeMatchesAdjacencySpectrum) {
  for (const Graph& g : {families::path(3), families::path(7), families::cycle(5), families::delta1(8)}) {
    EXPECT_NEAR(p_spectral_radius(g, 2.0).lambda, adjacency_radius(g), 1e-9);
    EXPECT_NEAR(oracle_spectral_radius(as_hypergraph(g), 2.0), adjacency_radius(g), 1e-9);
  }
}

TEST(Solver, AgreesWithOracleOnRandomThreeGraphs) {
  Rng rng(2024);
  std::vector<UniformHypergraph> hs;
  for (int t = 0; t < 25; ++t) hs.push_back(verify_detail::random_hypergraph(rng, 3, 4 + static_cast<int>(rng.below(3))));
  for (double p : {1.0, 1.5, 2.0, 3.0, 5.0})
    for (const auto& h : hs) {
      const auto est = p_spectral_radius(h, p);
      EXPECT_TRUE(est.converged);
      EXPECT_LE(std::abs(est.lambda - oracle_spectral_radius(h, p)), 1e-7);
    }
}

TEST(Oracle, SingleEdgeAndLimit) {
  EXPECT_NEAR(oracle_spectral_radius(kEdge3, 3.0), 1.0, 1e-12);
  EXPECT_THROW(oracle_spectral_radius(UniformHypergraph(3, 9, Edges{{0, 1, 2}}), 2.0), Error);
}

TEST(ClosedForm, Star) {
  EXPECT_NEAR(star_lambda(10, 2.0), 3.0, 1e-15);
  for (int n : {2, 5, 30}) EXPECT_NEAR(star_lambda(n, 1.0), 0.5, 1e-15);
  EXPECT_NEAR(star_lambda(5, 4.0), std::sqrt(2.0) * std::pow(4.0, 0.75), 1e-14);
  for (int n : {5, 10})
    for (double p : {1.0, 2.0, 4.0})
      EXPECT_NEAR(p_spectral_radius(families::star(n), p).lambda, star_lambda(n, p), 1e-8);
}

TEST(ClosedForm, StarPlusCubic) {
  EXPECT_NEAR(star_plus_lambda_p2(10), 3.0, 1e-14);
  EXPECT_LT(star_plus_lambda_p2(11), std::sqrt(10.0));
  for (int n : {6, 9, 10, 11, 14})
    EXPECT_NEAR(p_spectral_radius(families::star_plus(n - 1), 2.0).lambda, star_plus_lambda_p2(n), 1e-8) << n;
}

TEST(ClosedForm, SuspensionFactor) {
  EXPECT_NEAR(suspension_factor(2, 1.0), 2.0 / 9.0, 1e-15);
  EXPECT_NEAR(suspension_factor(2, 1.0) * motzkin_straus_lambda1(families::cycle(3)), 4.0 / 27.0, 1e-15);
  EXPECT_NEAR(suspension_factor(2, 2.0), 1.0 / std::sqrt(3.0), 1e-15);
  for (double p : {1.0, 1.5, 2.0, 3.0, 5.0})
    EXPECT_NEAR(suspension_factor(2, p) * single_edge_lambda(2, p), std::pow(3.0, 1.0 - 3.0 / p), 1e-14);
}

TEST(ClosedForm, WitnessRestrictionIsAnEigenvectorOfTheCore) {
  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    const auto core = verify_detail::random_connected_hypergraph(rng, 2, 5, 2);
    for (double p : {2.0, 3.0}) {
      const auto est = p_spectral_radius(suspension(core, 1), p);
      const double core_lambda = p_spectral_radius(core, p).lambda;
      std::vector<double> x(est.witness.entries.begin(), est.witness.entries.end() - 1);
      const double scale = std::pow(1.0 + 1.0 / core.rank(), 1.0 / p);
      for (double& v : x) v *= scale;
      EXPECT_NEAR(p_norm(x, p), 1.0, 1e-9);
      EXPECT_LE(eigen_residual(core, p, core_lambda, x), 1e-8);
    }
  }
}

TEST(ClosedForm, MotzkinStraus) {
  EXPECT_NEAR(motzkin_straus_lambda1(families::cycle(3)), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(motzkin_straus_lambda1(families::cycle(6)), 0.5, 1e-15);
  EXPECT_NEAR(motzkin_straus_lambda1(families::star(7)), 0.5, 1e-15);
  EXPECT_EQ(motzkin_straus_lambda1(Graph(1, {})), 0.0);
  for (const Graph& g : {families::delta1(7), families::cycle(5), complete(4)})
    EXPECT_NEAR(p_spectral_radius(g, 1.0).lambda, motzkin_straus_lambda1(g), 1e-9);
}

TEST(MonotoneScan, SingleEdgeIsConstant) {
  const auto scan = lambda_p_monotone_scan(kEdge3, {1.0, 2.0, 3.0, 6.0});
  for (const auto& pt : scan) EXPECT_NEAR(pt.normalized, 1.0 / 27.0, 1e-12);
  EXPECT_THROW(lambda_p_monotone_scan(kEdge3, {2.0, 1.0}), Error);
}

TEST(MonotoneScan, StarTenNonincreasing) {
  const auto scan = lambda_p_monotone_scan(as_hypergraph(families::star(10)), {1.0, 2.0, 4.0});
  for (std::size_t i = 0; i + 1 < scan.size(); ++i) EXPECT_LE(scan[i + 1].normalized, scan[i].normalized + 1e-9);
}

TEST(Parallel, EveryIndexOnceAndLowestErrorWins) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  try {
    parallel_for(100, 4, [](std::size_t i) {
      if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "17");
  }
}
