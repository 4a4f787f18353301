// bestchoice: command-line front end for the full- vs no-information
// best-choice game solver.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bestchoice/cli.hpp"

namespace {

using namespace bestchoice;

struct common_flags {
  std::string out = "csv";
  std::optional<double> abs_tol;

  numerics::tolerance tolerance() const {
    numerics::tolerance tol = cli::tolerance_from_env();
    if (abs_tol) tol.abs_tol = *abs_tol;
    tol.validate();
    return tol;
  }
};

void add_common(CLI::App* cmd, common_flags& f) {
  cmd->add_option("--out", f.out, "Output: csv | json | csv:PATH | json:PATH | PATH.csv | PATH.json")
      ->capture_default_str();
  cmd->add_option("--abs-tol", f.abs_tol, "Numeric tolerance (overrides BESTCHOICE_ABS_TOL; default 1e-12)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibria and values of the two-player best-choice game with a rank observer (I) and a\n"
               "value observer (II).\n\n"
               "Environment:\n"
               "  BESTCHOICE_ABS_TOL  default numeric tolerance (flag --abs-tol wins)\n"
               "  BESTCHOICE_SEED     default Monte Carlo seed (flag --seed wins)\n\n"
               "Exit codes: 0 success, 1 verification failure, 2 usage or domain error."};
  app.require_subcommand(1);

  common_flags common;
  int horizon = 10;
  std::string priority_text = "0.25";
  std::string method_text = "dp";
  std::string accounting_text = "margin_transfer";
  std::int64_t samples = 1'000'000;
  std::optional<std::uint64_t> seed;
  double xstep = 0.01;

  auto* thresholds = app.add_subcommand("thresholds", "Full-information thresholds x_n and Player I margins w1");
  thresholds->add_option("--horizon,-N", horizon, "Number of objects N")->required();
  add_common(thresholds, common);

  auto* table1 = app.add_subcommand("table1", "Secretary cutoff n* and shifted cutoff for the standard grid");
  add_common(table1, common);

  auto add_game_options = [&](CLI::App* cmd) {
    cmd->add_option("--horizon,-N", horizon, "Number of objects N")->capture_default_str();
    cmd->add_option("--priority,-p", priority_text, "Priority p in [0, 0.5]; accepts 1/3 and e^-1")
        ->capture_default_str();
  };
  auto add_mc_options = [&](CLI::App* cmd) {
    cmd->add_option("--samples", samples, "Monte Carlo sample count")->capture_default_str();
    cmd->add_option("--seed", seed, "Monte Carlo master seed (overrides BESTCHOICE_SEED)");
    cmd->add_option("--accounting", accounting_text, "margin_transfer | stopper_margin")->capture_default_str();
  };

  auto* values = app.add_subcommand("values", "Game value pair by backward induction and/or Monte Carlo");
  add_game_options(values);
  values->add_option("--method", method_text, "dp | mc | both")->capture_default_str();
  add_mc_options(values);
  add_common(values, common);

  auto* simulate = app.add_subcommand("simulate", "Alias of `values --method mc`");
  add_game_options(simulate);
  add_mc_options(simulate);
  add_common(simulate, common);

  auto* regions = app.add_subcommand("regions", "Equilibrium kind (SS/SF/FS/FF) over an (n, x) grid");
  add_game_options(regions);
  regions->add_option("--xstep", xstep, "Grid step in x, in (0, 0.1]")->capture_default_str();
  add_common(regions, common);

  auto* verify = app.add_subcommand("verify", "Run the oracle and invariant suite");
  add_common(verify, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::exit_usage;
  }

  try {
    const output::output_spec out = output::parse_output_spec(common.out);
    const numerics::tolerance tol = common.tolerance();

    if (thresholds->parsed()) return cli::cmd_thresholds(horizon, out, tol);
    if (table1->parsed()) return cli::cmd_table1(out, tol);
    if (values->parsed() || simulate->parsed()) {
      cli::values_request req;
      req.horizon = horizon;
      req.priority = cli::parse_priority(priority_text);
      req.how = simulate->parsed() ? cli::method::mc : cli::parse_method(method_text);
      req.samples = samples;
      req.seed = seed ? *seed : cli::seed_from_env();
      req.acc = cli::parse_accounting(accounting_text);
      return cli::cmd_values(req, out, tol);
    }
    if (regions->parsed()) return cli::cmd_regions(horizon, cli::parse_priority(priority_text), xstep, out, tol);
    if (verify->parsed()) {
      verification_options opt;
      opt.seed = cli::seed_from_env();
      return cli::cmd_verify(out, opt);
    }
  } catch (const std::exception& e) {
    std::cerr << "bestchoice: " << e.what() << "\n";
    return cli::exit_usage;
  }
  return cli::exit_usage;
}
