#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace bergespec {

using ordered_json = nlohmann::ordered_json;

/// One asserted comparison. The verdict is a pure function of the stored
/// numbers, so a serialized report can be re-checked without rerunning it.
///   le      lhs <= rhs + tol
///   ge      lhs >= rhs - tol
///   gt      lhs >  rhs + tol
///   abs_le  |lhs - rhs| <= tol
///   eq      lhs == rhs (counts and flags)
struct Check {
  std::string name;
  std::string relation;
  double lhs = 0.0;
  double rhs = 0.0;
  double tol = 0.0;
  bool passed = false;
};

inline bool evaluate_relation(const std::string& relation, double lhs, double rhs, double tol) {
  if (relation == "le") return lhs <= rhs + tol;
  if (relation == "ge") return lhs >= rhs - tol;
  if (relation == "gt") return lhs > rhs + tol;
  if (relation == "abs_le") return std::abs(lhs - rhs) <= tol;
  if (relation == "eq") return lhs == rhs;
  return false;
}

struct VerificationReport {
  std::string scenario;
  ordered_json params = ordered_json::object();
  bool pass = false;
  std::string mode = "exhaustive";  // exhaustive | structural | sampled | scan
  std::string winner_key;
  std::string winner_name;
  std::optional<double> lambda_max;
  std::optional<double> runner_up;
  std::optional<double> margin;
  std::vector<std::string> ties;
  double tol = 0.0;
  double tie_eps = 0.0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
  int nonconverged = 0;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  ordered_json data = ordered_json::object();

  Check& check(std::string name, std::string relation, double lhs, double rhs, double tol_used = 0.0) {
    Check c{std::move(name), std::move(relation), lhs, rhs, tol_used, false};
    c.passed = evaluate_relation(c.relation, c.lhs, c.rhs, c.tol);
    checks.push_back(std::move(c));
    return checks.back();
  }

  Check& check_flag(std::string name, bool value) {
    return check(std::move(name), "eq", value ? 1.0 : 0.0, 1.0);
  }

  /// Outcome is the conjunction of all checks.
  void finalize() {
    pass = true;
    for (const auto& c : checks) pass = pass && c.passed;
  }
};

namespace detail {

inline ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace detail

/// `with_timing = false` drops wall_ms, which is the only field that varies
/// between runs with identical inputs.
inline ordered_json to_json(const VerificationReport& r, bool with_timing = true) {
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"relation", c.relation},
                      {"lhs", c.lhs},
                      {"rhs", c.rhs},
                      {"tol", c.tol},
                      {"passed", c.passed}});
  ordered_json j;
  j["scenario"] = r.scenario;
  j["params"] = r.params;
  j["outcome"] = r.pass ? "pass" : "fail";
  j["winner_key"] = r.winner_key.empty() ? ordered_json(nullptr) : ordered_json(r.winner_key);
  j["winner_name"] = r.winner_name.empty() ? ordered_json(nullptr) : ordered_json(r.winner_name);
  j["lambda_max"] = detail::optional_number(r.lambda_max);
  j["runner_up"] = detail::optional_number(r.runner_up);
  j["margin"] = detail::optional_number(r.margin);
  j["ties"] = r.ties;
  j["tolerances"] = {{"tol", r.tol}, {"tie_eps", r.tie_eps}};
  j["seed"] = r.seed;
  if (with_timing) j["wall_ms"] = r.wall_ms;
  j["mode"] = r.mode;
  j["nonconverged"] = r.nonconverged;
  j["checks"] = checks;
  j["notes"] = r.notes;
  j["data"] = r.data;
  return j;
}

/// Re-derives every check and the outcome from a serialized report.
inline bool audit(const ordered_json& j) {
  bool all = true;
  for (const auto& c : j.at("checks")) {
    const bool v = evaluate_relation(c.at("relation").get<std::string>(), c.at("lhs").get<double>(),
                                     c.at("rhs").get<double>(), c.at("tol").get<double>());
    if (v != c.at("passed").get<bool>()) return false;
    all = all && v;
  }
  return (all ? "pass" : "fail") == j.at("outcome").get<std::string>();
}

inline bool audit(const VerificationReport& r) { return audit(to_json(r)); }

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace bergespec
