#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "bergespec/hgraph/canonical.hpp"
#include "bergespec/hgraph/families.hpp"
#include "bergespec/hgraph/operations.hpp"
#include "bergespec/spectral/closed_form.hpp"
#include "bergespec/transforms/transforms.hpp"
#include "bergespec/verify/common.hpp"

namespace bergespec {

namespace verify_detail {

inline void require_samples(int sample_count, const std::vector<double>& ps) {
  if (sample_count < 1) throw Error(Errc::parameter_domain, "sample count must be positive");
  if (ps.empty()) throw Error(Errc::parameter_domain, "empty p set");
  for (double p : ps)
    if (!(p >= 1.0) || !std::isfinite(p)) throw Error(Errc::parameter_domain, "p must be a finite number >= 1");
}

// Per-sample seeds are tagged by harness so suites draw different instances.
inline Rng sample_rng(const VerifyOptions& opts, std::uint64_t tag, std::size_t index) {
  return Rng(derive_seed(derive_seed(opts.solver.seed, tag), index));
}

}  // namespace verify_detail

/// lambda(H*K1) against factor * lambda(H) on random r-graphs, r in {2,3}, n <= 6.
inline VerificationReport verify_suspension_lemma(int sample_count, const std::vector<double>& p_grid,
                                                  const VerifyOptions& opts = {}) {
  verify_detail::require_samples(sample_count, p_grid);
  Stopwatch clock;
  VerificationReport r;
  verify_detail::stamp(r, "suspension", opts);
  r.mode = "sampled";
  r.params = {{"samples", sample_count}, {"p", p_grid}};

  std::vector<UniformHypergraph> hs;
  for (int i = 0; i < sample_count; ++i) {
    Rng rng = verify_detail::sample_rng(opts, 0x5u, static_cast<std::size_t>(i));
    const int rank = 2 + static_cast<int>(rng.below(2));
    const int n = rank + 1 + static_cast<int>(rng.below(6 - rank));
    hs.push_back(verify_detail::random_hypergraph(rng, rank, n));
  }
  struct Cell {
    double rel_err = 0.0;
    bool converged = true;
    std::optional<double> gap_h, gap_s;
  };
  const std::size_t np = p_grid.size();
  std::vector<Cell> cells(hs.size() * np);
  parallel_for(cells.size(), opts.jobs, [&](std::size_t c) {
    const auto& h = hs[c / np];
    const double p = p_grid[c % np];
    const auto susp = suspension(h, 1);
    const auto a = p_spectral_radius(h, p, opts.solver);
    const auto b = p_spectral_radius(susp, p, opts.solver);
    const double predicted = suspension_factor(h.rank(), p) * a.lambda;
    cells[c].rel_err = std::abs(b.lambda - predicted) / std::max(1.0, b.lambda);
    cells[c].converged = a.converged && b.converged;
    if (opts.oracle) {
      cells[c].gap_h = verify_detail::oracle_gap(h, p, a.lambda, opts.oracle_max_vertices);
      cells[c].gap_s = verify_detail::oracle_gap(susp, p, b.lambda, opts.oracle_max_vertices);
    }
  });

  double worst = 0.0;
  verify_detail::OracleTally tally;
  ordered_json per_p = ordered_json::object();
  for (std::size_t j = 0; j < np; ++j) {
    int ok = 0;
    double worst_p = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const Cell& cell = cells[i * np + j];
      if (!cell.converged) ++r.nonconverged;
      if (cell.rel_err <= 1e-7) ++ok;
      worst_p = std::max(worst_p, cell.rel_err);
      tally.add(cell.gap_h);
      tally.add(cell.gap_s);
    }
    worst = std::max(worst, worst_p);
    per_p[verify_detail::p_label(p_grid[j])] = {{"pass", ok}, {"total", hs.size()}, {"max_rel_err", worst_p}};
  }
  r.data["per_p"] = per_p;
  r.check("all_solves_converged", "eq", r.nonconverged, 0.0);
  r.check("max_relative_error", "le", worst, 0.0, 1e-7);
  if (opts.oracle) tally.report(r);
  r.finalize();
  r.wall_ms = clock.elapsed_ms();
  return r;
}

/// (lambda^(p)/(r m))^p along an increasing p grid on random 3-graphs, plus the
/// single-edge equality case and the star closed form.
inline VerificationReport verify_p_monotonicity(int sample_count, const std::vector<double>& p_grid,
                                                const VerifyOptions& opts = {}) {
  verify_detail::require_samples(sample_count, p_grid);
  if (!std::is_sorted(p_grid.begin(), p_grid.end()))
    throw Error(Errc::parameter_domain, "p grid must be increasing");
  Stopwatch clock;
  VerificationReport r;
  verify_detail::stamp(r, "monotonicity", opts);
  r.mode = "sampled";
  r.params = {{"samples", sample_count}, {"p", p_grid}};

  std::vector<UniformHypergraph> hs;
  for (int i = 0; i < sample_count; ++i) {
    Rng rng = verify_detail::sample_rng(opts, 0x6u, static_cast<std::size_t>(i));
    const int n = 4 + static_cast<int>(rng.below(3));
    hs.push_back(verify_detail::random_hypergraph(rng, 3, n));
  }
  hs.push_back(UniformHypergraph(3, 3, {{0, 1, 2}}));  // equality case, last slot
  const std::size_t np = p_grid.size();
  std::vector<SpectralEstimate> est(hs.size() * np);
  std::vector<std::optional<double>> gaps(est.size());
  parallel_for(est.size(), opts.jobs, [&](std::size_t c) {
    const auto& h = hs[c / np];
    const double p = p_grid[c % np];
    est[c] = p_spectral_radius(h, p, opts.solver);
    if (opts.oracle) gaps[c] = verify_detail::oracle_gap(h, p, est[c].lambda, opts.oracle_max_vertices);
  });

  auto normalized = [&](std::size_t i, std::size_t j) {
    const double rm = static_cast<double>(hs[i].rank()) * static_cast<double>(hs[i].num_edges());
    return std::pow(est[i * np + j].lambda / rm, p_grid[j]);
  };
  double worst_rise = 0.0;
  int monotone = 0;
  for (std::size_t i = 0; i + 1 < hs.size(); ++i) {
    double rise = 0.0;
    for (std::size_t j = 0; j + 1 < np; ++j) rise = std::max(rise, normalized(i, j + 1) - normalized(i, j));
    if (rise <= 1e-9) ++monotone;
    worst_rise = std::max(worst_rise, rise);
  }
  const std::size_t edge = hs.size() - 1;
  double edge_spread = 0.0;
  for (std::size_t j = 0; j < np; ++j)
    edge_spread = std::max(edge_spread, std::abs(normalized(edge, j) - normalized(edge, 0)));
  double star_rise = 0.0;
  for (std::size_t j = 0; j + 1 < np; ++j) {
    auto f = [&](double p) { return std::pow(star_lambda(10, p) / (2.0 * 9.0), p); };
    star_rise = std::max(star_rise, f(p_grid[j + 1]) - f(p_grid[j]));
  }
  for (const auto& e : est)
    if (!e.converged) ++r.nonconverged;
  verify_detail::OracleTally tally;
  for (const auto& g : gaps) tally.add(g);

  r.data["monotone_samples"] = monotone;
  r.data["worst_rise"] = worst_rise;
  r.data["single_edge_spread"] = edge_spread;
  r.data["star10_worst_rise"] = star_rise;
  r.check("all_solves_converged", "eq", r.nonconverged, 0.0);
  r.check("nonincreasing", "le", worst_rise, 0.0, 1e-9);
  r.check("single_edge_constant", "le", edge_spread, 0.0, 1e-12);
  r.check("star10_closed_form_nonincreasing", "le", star_rise, 0.0, 1e-9);
  if (opts.oracle) tally.report(r);
  r.finalize();
  r.wall_ms = clock.elapsed_ms();
  return r;
}

namespace verify_detail {

// Weak inequality for every p, strict by more than tie_eps when `strict`.
struct TransformTally {
  int legal = 0;
  int weak_ok = 0;
  int strict_ok = 0;
  double worst_drop = 0.0;      // max of lambda - lambda'
  double smallest_gain = 1e300; // min of lambda' - lambda
};

inline void transform_checks(VerificationReport& r, const std::vector<double>& ps,
                             const std::vector<TransformTally>& tallies, double strict_above) {
  ordered_json per_p = ordered_json::object();
  for (std::size_t j = 0; j < ps.size(); ++j) {
    const auto& t = tallies[j];
    const std::string label = p_label(ps[j]);
    const bool strict = ps[j] > strict_above;
    per_p[label] = {{"legal", t.legal}, {"weak", t.weak_ok}, {"strict", t.strict_ok},
                    {"worst_drop", t.worst_drop},
                    {"smallest_gain", t.legal > 0 ? ordered_json(t.smallest_gain) : ordered_json(nullptr)},
                    {"strict_asserted", strict}};
    r.check("legal_instances_p=" + label, "ge", t.legal, 1.0);
    r.check("weak_p=" + label, "le", t.worst_drop, 0.0, r.tie_eps);
    if (strict) r.check("strict_p=" + label, "eq", t.strict_ok, t.legal);
  }
  r.data["per_p"] = per_p;
}

struct TransformCell {
  bool legal = false;
  bool converged = true;
  double before = 0.0;
  double after = 0.0;
  std::optional<double> gap_before, gap_after;
  ordered_json record;
};

inline void tally_cells(VerificationReport& r, const std::vector<TransformCell>& cells, std::size_t np,
                        const std::vector<double>& ps, double strict_above) {
  std::vector<TransformTally> tallies(np);
  OracleTally oracle;
  ordered_json instances = ordered_json::array();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& cell = cells[c];
    if (!cell.legal) continue;
    auto& t = tallies[c % np];
    ++t.legal;
    if (!cell.converged) ++r.nonconverged;
    const double gain = cell.after - cell.before;
    t.worst_drop = std::max(t.worst_drop, -gain);
    t.smallest_gain = std::min(t.smallest_gain, gain);
    if (gain >= -r.tie_eps) ++t.weak_ok;
    if (gain > r.tie_eps) ++t.strict_ok;
    oracle.add(cell.gap_before);
    oracle.add(cell.gap_after);
    instances.push_back(cell.record);
  }
  r.check("all_solves_converged", "eq", r.nonconverged, 0.0);
  transform_checks(r, ps, tallies, strict_above);
  oracle.report(r);
  r.data["instances"] = instances;
}

inline ordered_json edges_json(const UniformHypergraph& h) {
  return h.sorted_edge_list();
}

}  // namespace verify_detail

/// Moving edges from v to u where the solver's witness has x_u >= x_v.
inline VerificationReport verify_move_edge_lemma(int sample_count, const std::vector<double>& p_set,
                                                 const VerifyOptions& opts = {}) {
  verify_detail::require_samples(sample_count, p_set);
  Stopwatch clock;
  VerificationReport r;
  verify_detail::stamp(r, "move-edges", opts);
  r.mode = "sampled";
  r.params = {{"samples", sample_count}, {"p", p_set}, {"r", 3}};
  r.notes.push_back("the hypothesis x_u >= x_v is read off the solver's returned witness");
  const std::size_t np = p_set.size();
  std::vector<verify_detail::TransformCell> cells(static_cast<std::size_t>(sample_count) * np);
  parallel_for(cells.size(), opts.jobs, [&](std::size_t c) {
    const std::size_t i = c / np;
    const double p = p_set[c % np];
    Rng rng = verify_detail::sample_rng(opts, 0x7u, c);
    auto& cell = cells[c];
    for (int attempt = 0; attempt < 20 && !cell.legal; ++attempt) {
      const int n = 4 + static_cast<int>(rng.below(4));
      const auto h = verify_detail::random_connected_hypergraph(rng, 3, n, static_cast<int>(rng.below(4)));
      const auto est = p_spectral_radius(h, p, opts.solver);
      const auto& x = est.witness.entries;
      // random ordered pair (u, v) with x_u >= x_v and a movable edge set
      std::vector<std::pair<Vertex, Vertex>> pairs;
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
          if (u != v && x[u] >= x[v]) pairs.push_back({u, v});
      for (std::size_t k = pairs.size(); k > 1; --k) std::swap(pairs[k - 1], pairs[rng.below(k)]);
      for (auto [u, v] : pairs) {
        std::vector<std::size_t> movable;
        for (std::size_t e = 0; e < h.num_edges(); ++e) {
          auto f = h.edge(e);
          const bool has_v = std::find(f.begin(), f.end(), v) != f.end();
          const bool has_u = std::find(f.begin(), f.end(), u) != f.end();
          if (has_v && !has_u) movable.push_back(e);
        }
        if (movable.empty()) continue;
        EdgeMoveSpec spec{{}, v, u};
        for (std::size_t e : movable)
          if (rng.below(2) == 1) spec.edges.push_back(e);
        if (spec.edges.empty()) spec.edges.push_back(movable[rng.below(movable.size())]);
        UniformHypergraph moved;
        try {
          moved = move_edges(h, spec);
        } catch (const Error& err) {
          if (err.code() == Errc::multiple_edge) continue;
          throw;
        }
        const auto after = p_spectral_radius(moved, p, opts.solver);
        cell.legal = true;
        cell.converged = est.converged && after.converged;
        cell.before = est.lambda;
        cell.after = after.lambda;
        if (opts.oracle) {
          cell.gap_before = verify_detail::oracle_gap(h, p, est.lambda, opts.oracle_max_vertices);
          cell.gap_after = verify_detail::oracle_gap(moved, p, after.lambda, opts.oracle_max_vertices);
        }
        cell.record = {{"sample", i}, {"p", p}, {"edges", verify_detail::edges_json(h)},
                       {"moved", spec.edges}, {"from", v}, {"to", u},
                       {"x_to", x[u]}, {"x_from", x[v]},
                       {"lambda", est.lambda}, {"lambda_after", after.lambda}};
        break;
      }
    }
  });
  verify_detail::tally_cells(r, cells, np, p_set, 2.0);
  r.finalize();
  r.wall_ms = clock.elapsed_ms();
  return r;
}

/// Deleting u and re-attaching its link at v, for non-adjacent u, v with
/// disjoint links.
inline VerificationReport verify_merge_lemma(int sample_count, const std::vector<double>& p_set,
                                             const VerifyOptions& opts = {}) {
  verify_detail::require_samples(sample_count, p_set);
  Stopwatch clock;
  VerificationReport r;
  verify_detail::stamp(r, "merge", opts);
  r.mode = "sampled";
  r.params = {{"samples", sample_count}, {"p", p_set}, {"r", 3}};
  const std::size_t np = p_set.size();
  std::vector<verify_detail::TransformCell> cells(static_cast<std::size_t>(sample_count) * np);
  parallel_for(cells.size(), opts.jobs, [&](std::size_t c) {
    const std::size_t i = c / np;
    const double p = p_set[c % np];
    Rng rng = verify_detail::sample_rng(opts, 0x8u, c);
    auto& cell = cells[c];
    for (int attempt = 0; attempt < 50 && !cell.legal; ++attempt) {
      const int n = 5 + static_cast<int>(rng.below(3));
      const auto h = verify_detail::random_connected_hypergraph(rng, 3, n, static_cast<int>(rng.below(3)));
      std::vector<std::pair<Vertex, Vertex>> pairs;
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
          if (u != v) pairs.push_back({u, v});
      for (std::size_t k = pairs.size(); k > 1; --k) std::swap(pairs[k - 1], pairs[rng.below(k)]);
      for (auto [u, v] : pairs) {
        UniformHypergraph merged;
        try {
          merged = merge_vertex(h, u, v);
        } catch (const Error& err) {
          if (err.code() == Errc::shared_edge || err.code() == Errc::shared_link) continue;
          throw;
        }
        const auto before = p_spectral_radius(h, p, opts.solver);
        const auto after = p_spectral_radius(merged, p, opts.solver);
        cell.legal = true;
        cell.converged = before.converged && after.converged;
        cell.before = before.lambda;
        cell.after = after.lambda;
        if (opts.oracle) {
          cell.gap_before = verify_detail::oracle_gap(h, p, before.lambda, opts.oracle_max_vertices);
          cell.gap_after = verify_detail::oracle_gap(merged, p, after.lambda, opts.oracle_max_vertices);
        }
        cell.record = {{"sample", i}, {"p", p}, {"edges", verify_detail::edges_json(h)},
                       {"u", u}, {"v", v}, {"lambda", before.lambda}, {"lambda_after", after.lambda}};
        break;
      }
    }
  });
  verify_detail::tally_cells(r, cells, np, p_set, 2.0);
  r.finalize();
  r.wall_ms = clock.elapsed_ms();
  return r;
}

/// G(u; k+1, s-1) -> G(u; k, s) on random connected base graphs, k >= s >= 1.
/// Strict for p > 1; at p = 1 only the weak inequality is checked.
inline VerificationReport verify_path_exchange(int sample_count, const std::vector<double>& p_set,
                                               const VerifyOptions& opts = {}) {
  verify_detail::require_samples(sample_count, p_set);
  Stopwatch clock;
  VerificationReport r;
  verify_detail::stamp(r, "path-exchange", opts);
  r.mode = "sampled";
  r.params = {{"samples", sample_count}, {"p", p_set}, {"r", 2}};
  const std::size_t np = p_set.size();
  std::vector<verify_detail::TransformCell> cells(static_cast<std::size_t>(sample_count) * np);
  std::vector<char> shape_ok(cells.size(), 1);
  parallel_for(cells.size(), opts.jobs, [&](std::size_t c) {
    const std::size_t i = c / np;
    const double p = p_set[c % np];
    // instances depend on the sample only, so every p sees the same graphs
    Rng rng = verify_detail::sample_rng(opts, 0x9u, i);
    // the base needs an edge: on a single vertex both graphs are the same path.
    // Paths stay short because at p < 2 the gap shrinks doubly exponentially
    // with their length and soon drops below double precision.
    const int base_n = 2 + static_cast<int>(rng.below(3));
    const Graph base = verify_detail::random_connected_graph(rng, base_n, static_cast<int>(rng.below(3)));
    const Vertex root = static_cast<Vertex>(rng.below(base_n));
    const int s = 1 + static_cast<int>(rng.below(2));
    const int k = s + static_cast<int>(rng.below(2));
    // paths of lengths k+1 and s-1; tails are the last fresh labels of each
    const Graph unbalanced = families::attach_two_paths(base, root, k + 1, s - 1);
    const Vertex tail_a = base_n + k;
    const Vertex tail_b = s - 1 > 0 ? base_n + k + s - 1 : root;
    const Graph balanced = path_exchange(unbalanced, root, tail_a, tail_b);
    shape_ok[c] = is_isomorphic(as_hypergraph(balanced),
                                as_hypergraph(families::attach_two_paths(base, root, k, s)));
    const auto before = p_spectral_radius(unbalanced, p, opts.solver);
    const auto after = p_spectral_radius(balanced, p, opts.solver);
    auto& cell = cells[c];
    cell.legal = true;
    cell.converged = before.converged && after.converged;
    cell.before = before.lambda;
    cell.after = after.lambda;
    if (opts.oracle) {
      cell.gap_before = verify_detail::oracle_gap(as_hypergraph(unbalanced), p, before.lambda,
                                                  opts.oracle_max_vertices);
      cell.gap_after = verify_detail::oracle_gap(as_hypergraph(balanced), p, after.lambda,
                                                 opts.oracle_max_vertices);
    }
    cell.record = {{"sample", i}, {"p", p}, {"base", graph_to_json(base)}, {"root", root},
                   {"k", k}, {"s", s}, {"lambda", before.lambda}, {"lambda_after", after.lambda}};
  });
  r.check("exchange_produces_balanced_shape", "eq",
          static_cast<double>(std::count(shape_ok.begin(), shape_ok.end(), 1)),
          static_cast<double>(shape_ok.size()));
  verify_detail::tally_cells(r, cells, np, p_set, 1.0);
  r.finalize();
  r.wall_ms = clock.elapsed_ms();
  return r;
}

}  // namespace bergespec
