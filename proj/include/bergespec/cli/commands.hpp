#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bergespec/berge/catalog_io.hpp"
#include "bergespec/berge/oracle.hpp"
#include "bergespec/hgraph/families.hpp"
#include "bergespec/hgraph/io.hpp"
#include "bergespec/verify/properties.hpp"
#include "bergespec/verify/theorems.hpp"

#ifndef BERGESPEC_GOLDEN_DIR
#define BERGESPEC_GOLDEN_DIR "golden"
#endif

namespace bergespec::cli {

enum ExitCode : int {
  kPass = 0,
  kVerifiedFail = 1,
  kUsage = 2,
  kNonConvergence = 3,
  kResourceGuard = 4,
};

inline ordered_json estimate_to_json(const SpectralEstimate& e) {
  return {{"lambda", e.lambda},
          {"p", e.p},
          {"residual", e.residual},
          {"witness", e.witness.entries},
          {"iterations", e.iterations},
          {"restarts_used", e.restarts_used},
          {"converged", e.converged},
          {"seed", e.seed}};
}

/// Failing reports with unconverged solves are numerical trouble, not a
/// refutation.
inline int exit_code_for(const VerificationReport& r) {
  if (r.pass) return kPass;
  return r.nonconverged > 0 ? kNonConvergence : kVerifiedFail;
}

inline int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::refused:
    case Errc::too_large: return kResourceGuard;
    default: return kUsage;
  }
}

namespace detail {

// Golden documents are flat JSON objects keyed by a scenario string.
inline nlohmann::json read_golden(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return nlohmann::json::object();
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, file.string() + ": " + e.what());
  }
}

inline void write_golden(const std::filesystem::path& file, const nlohmann::json& doc) {
  std::filesystem::create_directories(file.parent_path());
  io::detail::write_file(file.string(), doc.dump(2) + "\n");
}

inline std::string p_key(double p) {
  std::ostringstream ss;
  ss << std::setprecision(12) << p;
  return ss.str();
}

struct Common {
  std::uint64_t seed = 1;
  double tol = 1e-10;
  double tie_eps = 1e-7;
  int restarts = 64;
  int jobs = 1;
  bool compact = false;
  bool no_oracle = false;
  bool update_golden = false;
  std::string golden_dir = BERGESPEC_GOLDEN_DIR;

  void attach(CLI::App* app) {
    app->add_option("--seed", seed, "master seed")->capture_default_str();
    app->add_option("--tol", tol, "eigenequation residual accepted as converged")->capture_default_str();
    app->add_option("--tie-eps", tie_eps, "slack for equality and strictness")->capture_default_str();
    app->add_option("--restarts", restarts, "seeded solver starts")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--jobs", jobs, "worker threads; output does not depend on it")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_flag("--json", compact, "compact single-line JSON, no summary on stderr");
    app->add_flag("--no-oracle", no_oracle, "skip brute-force cross-checks");
    app->add_flag("--update-golden", update_golden, "rewrite golden values after the oracle gate");
    app->add_option("--golden-dir", golden_dir, "golden value directory")->capture_default_str();
  }

  VerifyOptions verify_options() const {
    VerifyOptions o;
    o.solver.seed = seed;
    o.solver.tol = tol;
    o.solver.tie_eps = tie_eps;
    o.solver.restarts = restarts;
    o.jobs = jobs;
    o.oracle = !no_oracle;
    return o;
  }
};

// Base graph from --family/--k or a .g file.
struct BaseGraph {
  std::string family;
  int k = 0;
  std::string file;

  void attach(CLI::App* app) {
    auto* fam = app->add_option("--family", family, "base family")->check(CLI::IsMember(families::family_names()));
    app->add_option("--k", k, "family size parameter");
    app->add_option("--graph", file, ".g file with the base graph")->excludes(fam);
  }

  bool given() const { return !family.empty() || !file.empty(); }

  Graph build() const {
    if (!file.empty()) return io::read_graph(file);
    if (family.empty()) throw Error(Errc::parameter_domain, "a base graph is required (--family or --graph)");
    if (family == "k2") return construct_graph(family, {});
    return construct_graph(family, {k});
  }

  // Golden lookup needs a named family.
  std::optional<std::string> key(int r, int extra) const {
    if (family.empty()) return std::nullopt;
    const int size = family == "k2" ? 2 : k;
    return family + ":k" + std::to_string(size) + ":r" + std::to_string(r) + ":extra" + std::to_string(extra);
  }
};

inline void emit(std::ostream& out, const ordered_json& j, bool compact) {
  out << (compact ? j.dump() : j.dump(2)) << "\n";
}

inline void summary(std::ostream& err, const VerificationReport& r) {
  err << r.scenario << " [" << r.mode << "]: " << (r.pass ? "pass" : "FAIL");
  if (!r.winner_name.empty()) err << ", winner " << r.winner_name;
  if (r.lambda_max) err << ", lambda_max " << std::setprecision(12) << *r.lambda_max;
  if (r.margin) err << ", margin " << std::setprecision(3) << *r.margin;
  if (r.nonconverged > 0) err << ", " << r.nonconverged << " unconverged solves";
  err << "\n";
  for (const auto& c : r.checks)
    if (!c.passed)
      err << "  failed " << c.name << ": " << std::setprecision(12) << c.lhs << " " << c.relation << " "
          << c.rhs << " (tol " << c.tol << ")\n";
  for (const auto& n : r.notes) err << "  note: " << n << "\n";
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral extremal problems for Berge hypergraphs"};
  app.require_subcommand(1);
  detail::Common common;

  // lambda
  auto* lam = app.add_subcommand("lambda", "p-spectral radius of a .uhg file");
  std::string lam_file;
  double lam_p = 2.0;
  lam->add_option("file", lam_file, ".uhg file")->required();
  lam->add_option("--p", lam_p, "norm exponent p >= 1")->required();
  common.attach(lam);

  // enumerate
  auto* en = app.add_subcommand("enumerate", "isomorph-free Berge catalog of a base graph");
  detail::BaseGraph en_base;
  int en_r = 3, en_extra = 1;
  std::string en_out;
  bool en_force = false;
  en_base.attach(en);
  en->add_option("--r", en_r, "rank")->capture_default_str();
  en->add_option("--extra", en_extra, "fresh vertices beyond the base, at most r-2")->capture_default_str();
  en->add_option("--out", en_out, "catalog directory (.uhg files plus index.json)");
  en->add_flag("--force", en_force, "skip the 1e8 raw-space guard");
  common.attach(en);

  // construct
  auto* con = app.add_subcommand("construct", "write a named family as .g, or its suspension/expansion as .uhg");
  std::string con_family, con_out;
  std::vector<int> con_params;
  int con_suspend = 0, con_expand = 0;
  con->add_option("family", con_family, "family name")->required()->check(CLI::IsMember(families::family_names()));
  con->add_option("params", con_params, "integer parameters");
  con->add_option("--suspend", con_suspend, "add this many common vertices to every edge");
  con->add_option("--expand", con_expand, "expansion rank");
  con->add_option("--out", con_out, "output file (stdout when absent)");

  // verify
  auto* ver = app.add_subcommand("verify", "run a verification scenario");
  const std::vector<std::string> scenarios{"path",  "cycle",        "star",          "star-scan",
                                           "suspension", "monotonicity", "move-edges", "merge",
                                           "path-exchange", "expansion"};
  std::string scenario;
  int v_k = 6, v_k_min = 10, v_k_max = 40, v_samples = 64, v_structural = 10000;
  double v_p = 3.0;
  std::vector<double> v_pset;
  detail::BaseGraph v_base;
  ver->add_option("scenario", scenario, "scenario name")->required()->check(CLI::IsMember(scenarios));
  ver->add_option("--k", v_k, "base size for path, cycle, star")->capture_default_str();
  ver->add_option("--p", v_p, "norm exponent")->capture_default_str();
  ver->add_option("--p-set", v_pset, "comma separated p values for sampled suites and scans")->delimiter(',');
  ver->add_option("--samples", v_samples, "random instances for sampled suites")->capture_default_str();
  ver->add_option("--k-min", v_k_min, "star-scan lower end")->capture_default_str();
  ver->add_option("--k-max", v_k_max, "star-scan upper end")->capture_default_str();
  ver->add_option("--structural-samples", v_structural, "sampled cores in star structural mode")
      ->capture_default_str();
  ver->add_option("--base", v_base.family, "expansion base family")
      ->check(CLI::IsMember(families::family_names()));
  ver->add_option("--graph", v_base.file, "expansion base as a .g file");
  common.attach(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*lam) {
      const auto h = io::read_uhg(lam_file);
      const auto opts = common.verify_options();
      const auto est = p_spectral_radius(h, lam_p, opts.solver);
      detail::emit(out, estimate_to_json(est), common.compact);
      if (!common.compact)
        err << "lambda^(" << lam_p << ") = " << std::setprecision(15) << est.lambda
            << (est.converged ? "" : " (not converged)") << "\n";
      return est.converged ? kPass : kNonConvergence;
    }

    if (*con) {
      Graph g = construct_graph(con_family, con_params);
      std::string text;
      if (con_suspend > 0 && con_expand > 0)
        throw Error(Errc::parameter_domain, "--suspend and --expand are exclusive");
      if (con_suspend > 0) text = io::format_uhg(suspension(g, con_suspend));
      else if (con_expand > 0) text = io::format_uhg(expansion(g, con_expand));
      else text = io::format_graph(g);
      if (con_out.empty()) out << text;
      else io::detail::write_file(con_out, text);
      return kPass;
    }

    if (*en) {
      const Graph g = en_base.build();
      EnumerateOptions eo;
      eo.jobs = common.jobs;
      eo.force = en_force;
      const auto cat = enumerate_berge(g, en_r, en_extra, eo);
      const std::filesystem::path golden_file = std::filesystem::path(common.golden_dir) / "berge_counts.json";
      auto golden = detail::read_golden(golden_file);
      const auto key = en_base.key(en_r, en_extra);
      std::optional<long long> recorded;
      if (key && golden.contains(*key)) recorded = golden[*key].get<long long>();

      ordered_json doc = {{"base", graph_to_json(g)},
                          {"r", en_r},
                          {"extra", en_extra},
                          {"count", cat.size()},
                          {"raw_assignments", cat.raw_assignments},
                          {"golden", recorded ? ordered_json(*recorded) : ordered_json(nullptr)}};
      if (!cat.diagnostic.empty()) doc["diagnostic"] = cat.diagnostic;
      int code = kPass;
      if (common.update_golden) {
        if (!key) throw Error(Errc::parameter_domain, "--update-golden needs --family");
        const auto oracle = oracle_berge_count(g, en_r, en_extra);
        doc["oracle_count"] = oracle;
        if (oracle == cat.size()) {
          golden[*key] = cat.size();
          detail::write_golden(golden_file, golden);
          doc["golden"] = cat.size();
          doc["golden_updated"] = true;
        } else {
          doc["golden_updated"] = false;
          code = kVerifiedFail;
        }
      } else if (recorded && static_cast<std::size_t>(*recorded) != cat.size()) {
        code = kVerifiedFail;
      }
      if (!en_out.empty()) write_catalog(en_out, cat, recorded);
      detail::emit(out, doc, common.compact);
      if (!common.compact) {
        err << "catalog size " << cat.size();
        if (recorded) err << " (golden " << *recorded << ")";
        if (!cat.diagnostic.empty()) err << ": " << cat.diagnostic;
        err << "\n";
      }
      return code;
    }

    // verify
    VerifyOptions opts = common.verify_options();
    opts.structural_samples = v_structural;
    auto pset = [&](std::vector<double> fallback) { return v_pset.empty() ? fallback : v_pset; };
    VerificationReport report;
    if (scenario == "path") report = verify_path_theorem(v_k, v_p, opts);
    else if (scenario == "cycle") report = verify_cycle_theorem(v_k, v_p, opts);
    else if (scenario == "star") report = verify_star_theorem(v_k, v_p, opts);
    else if (scenario == "star-scan") report = verify_star_scan(v_k_min, v_k_max, pset({1.2, 1.5, 1.8}), opts);
    else if (scenario == "suspension") report = verify_suspension_lemma(v_samples, pset({1, 1.5, 2, 3, 5}), opts);
    else if (scenario == "monotonicity")
      report = verify_p_monotonicity(v_samples, pset({1, 1.5, 2, 3, 4, 6, 8, 12}), opts);
    else if (scenario == "move-edges") report = verify_move_edge_lemma(v_samples, pset({1, 2, 3, 5}), opts);
    else if (scenario == "merge") report = verify_merge_lemma(v_samples, pset({1, 2, 3, 5}), opts);
    else if (scenario == "path-exchange") report = verify_path_exchange(v_samples, pset({1, 1.5, 2, 3, 5}), opts);
    else {
      if (!v_base.given()) v_base.family = "path", v_base.k = v_k;
      else if (v_base.family.size()) v_base.k = v_k;
      report = verify_expansion_minimum(v_base.build(), v_p, opts);
    }

    int code = exit_code_for(report);
    // Golden maxima for the catalog theorems, keyed by scenario, k and p.
    if (scenario == "path" || scenario == "cycle") {
      const std::filesystem::path golden_file = std::filesystem::path(common.golden_dir) / "catalog_maxima.json";
      auto golden = detail::read_golden(golden_file);
      const std::string key = scenario + ":k" + std::to_string(v_k) + ":p" + detail::p_key(v_p);
      if (common.update_golden) {
        const bool oracle_ok = std::any_of(report.checks.begin(), report.checks.end(), [](const Check& c) {
          return c.name == "oracle_agreement" && c.passed;
        });
        if (report.pass && oracle_ok && report.lambda_max) {
          golden[key] = *report.lambda_max;
          detail::write_golden(golden_file, golden);
          report.data["golden_updated"] = true;
        } else {
          report.data["golden_updated"] = false;
          code = code == kPass ? kVerifiedFail : code;
        }
      } else if (golden.contains(key) && report.lambda_max) {
        const double recorded = golden[key].get<double>();
        report.data["golden_lambda_max"] = recorded;
        report.check("matches_golden_lambda_max", "abs_le", *report.lambda_max, recorded, report.tie_eps);
        report.finalize();
        code = exit_code_for(report);
      }
    }
    detail::emit(out, to_json(report), common.compact);
    if (!common.compact) detail::summary(err, report);
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace bergespec::cli
