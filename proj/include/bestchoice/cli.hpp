#ifndef BESTCHOICE_CLI_HPP
#define BESTCHOICE_CLI_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bestchoice/equilibrium.hpp"
#include "bestchoice/errors.hpp"
#include "bestchoice/models.hpp"
#include "bestchoice/oracle.hpp"
#include "bestchoice/output.hpp"
#include "bestchoice/valuation.hpp"
#include "bestchoice/verify.hpp"

// Command implementations behind the `bestchoice` executable. Each returns
// the process exit code: 0 success, 1 verification failure, 2 usage or
// domain error (raised as exceptions and mapped by the caller).
namespace bestchoice::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_verify_failed = 1;
inline constexpr int exit_usage = 2;

inline constexpr const char* env_tolerance = "BESTCHOICE_ABS_TOL";
inline constexpr const char* env_seed = "BESTCHOICE_SEED";
inline constexpr std::uint64_t default_seed = 20240611;

// "1/3" and "e^-1" are accepted verbatim; anything else must be a decimal.
inline double parse_priority(const std::string& text) {
  if (text == "1/3") return 1.0 / 3.0;
  if (text == "e^-1") return std::exp(-1.0);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw domain_error("cannot parse priority '" + text + "'");
  if (!(v >= 0.0 && v <= 1.0)) throw domain_error("priority must lie in [0, 1]");
  return v;
}

inline numerics::tolerance tolerance_from_env() {
  numerics::tolerance tol;
  if (const char* s = std::getenv(env_tolerance)) {
    const std::string text(s);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !(v > 0.0))
      throw domain_error(std::string(env_tolerance) + " must be a positive number");
    tol.abs_tol = v;
  }
  return tol;
}

inline std::uint64_t seed_from_env() {
  if (const char* s = std::getenv(env_seed)) {
    const std::string text(s);
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
      throw domain_error(std::string(env_seed) + " must be an unsigned integer");
    return v;
  }
  return default_seed;
}

// --- thresholds -------------------------------------------------------------

inline output::table thresholds_table(int horizon, const numerics::tolerance& tol) {
  const problem_config cfg = make_config(horizon, 0.5);
  const threshold_vector xs = fullinfo_thresholds(cfg, tol);
  const int nstar = secretary_cutoff(cfg);
  output::table t{{"n", "x_n", "w1", "is_at_or_after_nstar"}, {}};
  for (int n = 1; n <= horizon; ++n)
    t.rows.push_back({std::int64_t{n}, xs.at(n), w1(n, cfg), n >= nstar});
  return t;
}

inline int cmd_thresholds(int horizon, const output::output_spec& out, const numerics::tolerance& tol,
                          std::ostream& os = std::cout) {
  output::emit(out, output::render(out, thresholds_table(horizon, tol)), os);
  return exit_ok;
}

// --- table1 -----------------------------------------------------------------

struct priority_label {
  const char* text;
  double value;
};

inline std::vector<priority_label> table1_priorities() {
  return {{"0.1", 0.1}, {"0.2", 0.2}, {"0.25", 0.25}, {"1/3", 1.0 / 3.0}, {"e^-1", std::exp(-1.0)}, {"0.5", 0.5}};
}

inline std::vector<int> table1_horizons() { return {5, 10, 20, 30, 50}; }

inline output::table table1_table(const numerics::tolerance& tol) {
  output::table t{{"N", "nstar", "p", "ntilde"}, {}};
  for (int big_n : table1_horizons()) {
    for (const auto& p : table1_priorities()) {
      const game_tables g = build_game_tables(make_config(big_n, p.value), tol);
      t.rows.push_back({std::int64_t{big_n}, std::int64_t{g.nstar}, p.value, std::int64_t{g.ntilde}});
    }
  }
  return t;
}

inline int cmd_table1(const output::output_spec& out, const numerics::tolerance& tol, std::ostream& os = std::cout) {
  output::emit(out, output::render(out, table1_table(tol)), os);
  return exit_ok;
}

// --- values -----------------------------------------------------------------

enum class method { dp, mc, both };

inline method parse_method(const std::string& s) {
  if (s == "dp") return method::dp;
  if (s == "mc") return method::mc;
  if (s == "both") return method::both;
  throw domain_error("method must be dp, mc or both");
}

inline const char* to_string(method m) {
  switch (m) {
    case method::dp: return "dp";
    case method::mc: return "mc";
    case method::both: return "both";
  }
  return "?";
}

inline accounting parse_accounting(const std::string& s) {
  if (s == "margin_transfer") return accounting::margin_transfer;
  if (s == "stopper_margin") return accounting::stopper_margin;
  throw domain_error("accounting must be margin_transfer or stopper_margin");
}

struct values_request {
  int horizon = 10;
  double priority = 0.25;
  method how = method::dp;
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = default_seed;
  accounting acc = accounting::margin_transfer;
};

inline std::string values_document(const values_request& req, const output::output_spec& out,
                                   const numerics::tolerance& tol) {
  const problem_config cfg = make_config(req.horizon, req.priority);
  if (cfg.priority > 0.5) throw unsupported_priority("values: priority must not exceed 0.5");
  const game_tables t = build_game_tables(cfg, tol);
  std::optional<value_pair> dp;
  std::optional<sim_result> mc;
  if (req.how != method::mc) dp = backward_induce(t, req.acc).game_value;
  if (req.how != method::dp) mc = simulate(cfg, t, sim_config{req.samples, req.seed, 1 << 16}, req.acc);

  if (out.fmt == output::format::json) {
    nlohmann::json j;
    j["horizon"] = req.horizon;
    j["priority"] = req.priority;
    j["method"] = to_string(req.how);
    j["accounting"] = std::string(to_string(req.acc));
    j["val1"] = dp ? nlohmann::json(dp->val1) : nlohmann::json(nullptr);
    j["val2"] = dp ? nlohmann::json(dp->val2) : nlohmann::json(nullptr);
    if (mc) {
      j["mc"] = {{"val1", mc->values.val1}, {"val2", mc->values.val2},   {"se1", mc->std_errors.val1},
                 {"se2", mc->std_errors.val2}, {"samples", mc->samples}, {"seed", req.seed}};
    } else {
      j["mc"] = nullptr;
    }
    return j.dump(2) + "\n";
  }
  output::table tab;
  std::vector<output::cell> row;
  if (dp) {
    tab.columns.insert(tab.columns.end(), {"val1", "val2"});
    row.insert(row.end(), {dp->val1, dp->val2});
  }
  if (mc) {
    tab.columns.insert(tab.columns.end(), {"mc_val1", "mc_val2", "se1", "se2"});
    row.insert(row.end(), {mc->values.val1, mc->values.val2, mc->std_errors.val1, mc->std_errors.val2});
  }
  tab.rows.push_back(std::move(row));
  return output::to_csv(tab);
}

inline int cmd_values(const values_request& req, const output::output_spec& out, const numerics::tolerance& tol,
                      std::ostream& os = std::cout) {
  output::emit(out, values_document(req, out, tol), os);
  return exit_ok;
}

// --- regions ----------------------------------------------------------------

inline output::table regions_table(int horizon, double priority, double step, const numerics::tolerance& tol) {
  const problem_config cfg = make_config(horizon, priority);
  if (cfg.priority > 0.5) throw unsupported_priority("regions: priority must not exceed 0.5");
  const region_grid g = region_map(build_game_tables(cfg, tol), step);
  output::table t{{"n", "x", "kind"}, {}};
  for (int n = 1; n <= g.horizon; ++n)
    for (std::size_t j = 0; j < g.xs.size(); ++j)
      t.rows.push_back({std::int64_t{n}, g.xs[j], std::string(to_string(g.at(n, j)))});
  return t;
}

inline int cmd_regions(int horizon, double priority, double step, const output::output_spec& out,
                       const numerics::tolerance& tol, std::ostream& os = std::cout) {
  output::emit(out, output::render(out, regions_table(horizon, priority, step, tol)), os);
  return exit_ok;
}

// --- verify -----------------------------------------------------------------

inline output::table reports_table(const std::vector<oracle::oracle_report>& reports) {
  output::table t{{"quantity", "oracle_value", "solver_value", "abs_diff", "tolerance", "passed", "method"}, {}};
  for (const auto& r : reports)
    t.rows.push_back({r.quantity, r.oracle_value, r.solver_value, r.abs_diff, r.tolerance, r.passed, r.method});
  return t;
}

inline int cmd_verify(const output::output_spec& out, const verification_options& opt = {},
                      std::ostream& os = std::cout) {
  const auto reports = verification_suite(opt);
  output::emit(out, output::render(out, reports_table(reports)), os);
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
  return ok ? exit_ok : exit_verify_failed;
}

}  // namespace bestchoice::cli

#endif
