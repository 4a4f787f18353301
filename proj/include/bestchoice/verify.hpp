#ifndef BESTCHOICE_VERIFY_HPP
#define BESTCHOICE_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bestchoice/equilibrium.hpp"
#include "bestchoice/models.hpp"
#include "bestchoice/oracle.hpp"
#include "bestchoice/valuation.hpp"

namespace bestchoice {

struct verification_options {
  std::uint64_t seed = 20240611;
  std::int64_t mc_samples = 200'000;
  // Replaces the N = 10 threshold table in the threshold-dependent checks.
  std::optional<threshold_vector> thresholds_n10;
};

// Oracle comparisons and invariant checks. Every entry must pass on a
// correct build.
inline std::vector<oracle::oracle_report> verification_suite(const verification_options& opt = {}) {
  using oracle::make_report;
  std::vector<oracle::oracle_report> out;
  const threshold_vector xs10 = opt.thresholds_n10.value_or(fullinfo_thresholds(10));
  const problem_config cfg10 = make_config(10, 0.25);

  out.push_back(make_report("fullinfo_threshold(1)", 0.5, fullinfo_threshold(1), 0.0, "closed form 1/x - 1 = 1"));
  out.push_back(make_report("fullinfo_threshold(2)", 1.0 / (std::sqrt(6.0) - 1.0), fullinfo_threshold(2), 1e-9,
                            "closed form root of u^2 + 2u - 5 = 0, x = 1/u"));

  double residual = 0.0;
  for (int n = 1; n < 10; ++n) residual = std::max(residual, std::abs(fullinfo_indifference(xs10.at(n), 10 - n)));
  out.push_back(make_report("max threshold residual (N=10)", 0.0, residual, 1e-9,
                            "|sum_k (x^-k - 1)/k - 1| at every x_n"));

  double indiff = 0.0;
  for (int n = 1; n < 10; ++n)
    indiff = std::max(indiff, std::abs(fullinfo_stop_reward({n, xs10.at(n)}, cfg10) -
                                       fullinfo_continue_reward({n, xs10.at(n)}, cfg10)));
  out.push_back(make_report("max |s2 - c2| at thresholds (N=10)", 0.0, indiff, 1e-9, "indifference identity"));

  const oracle::rational sec = oracle::secretary_exhaustive_exact(5, 3);
  out.push_back(make_report("secretary_exhaustive(5,3) - 13/30", 0.0,
                            static_cast<double>(sec.num * 30 - 13 * sec.den), 0.0,
                            "enumeration of 120 permutations, exact rational"));

  double worst_gap = 0.0;
  for (int big_n = 2; big_n <= 8; ++big_n) {
    const double at_cutoff = oracle::secretary_exhaustive(big_n, secretary_cutoff(make_config(big_n, 0.5)));
    for (int r = 1; r <= big_n; ++r)
      worst_gap = std::max(worst_gap, oracle::secretary_exhaustive(big_n, r) - at_cutoff);
  }
  out.push_back(make_report("secretary cutoff optimality (N=2..8)", 0.0, worst_gap, 0.0,
                            "best enumerated cutoff minus n*; must not be positive"));

  {
    auto r = oracle::fullinfo_mc_check(fullinfo_thresholds(2), opt.mc_samples, opt.seed);
    out.push_back(make_report("fullinfo_rule_value(N=2) exact", 0.75, r.solver_value, 1e-12,
                              "hand integral 3/8 + 3/8"));
    out.push_back(std::move(r));
  }
  out.push_back(oracle::fullinfo_mc_check(xs10, opt.mc_samples, opt.seed + 1));

  {
    const auto mesh = oracle::game_exhaustive_small(2, 0.5, 2000);
    const auto dp = backward_induce(build_game_tables(make_config(2, 0.5))).game_value;
    out.push_back(make_report("game value N=2 p=0.5 val1", mesh.val1, dp.val1, 1e-4, "joint mesh 2000^2"));
    out.push_back(make_report("game value N=2 p=0.5 val2", mesh.val2, dp.val2, 1e-4, "joint mesh 2000^2"));
  }
  {
    const auto mesh = oracle::game_exhaustive_small(3, 0.25, 1000);
    const auto dp = backward_induce(build_game_tables(make_config(3, 0.25))).game_value;
    out.push_back(make_report("game value N=3 p=0.25 val1", mesh.val1, dp.val1, 1e-3, "joint mesh 1000^3"));
    out.push_back(make_report("game value N=3 p=0.25 val2", mesh.val2, dp.val2, 1e-3, "joint mesh 1000^3"));
  }

  {
    std::mt19937_64 g(batch_seed(opt.seed, 7));
    double worst_record = 0.0, worst_rank = 0.0;
    const int big_n = 100;
    for (int n = 1; n <= big_n; ++n) {
      const double x = uniform01(g);
      double mass = numerics::ipow(x, big_n - n);
      for (int m = n + 1; m <= big_n; ++m) mass += record_transition_density({n, x}, m) * (1.0 - x);
      worst_record = std::max(worst_record, std::abs(mass - 1.0));
      double rank_mass = static_cast<double>(n) / big_n;
      for (int m = n + 1; m <= big_n; ++m) rank_mass += rank_transition(n, m);
      worst_rank = std::max(worst_rank, std::abs(rank_mass - 1.0));
    }
    out.push_back(make_report("record kernel mass (N=100)", 0.0, worst_record, 1e-12, "sum + absorption"));
    out.push_back(make_report("rank kernel mass (N=100)", 0.0, worst_rank, 1e-12, "sum + n/N"));
  }

  {
    const game_tables t = build_game_tables(cfg10);
    const auto dp = backward_induce(t).game_value;
    const auto mc = simulate(t, {opt.mc_samples, opt.seed, 1 << 14});
    out.push_back(make_report("game value N=10 p=0.25 val1", mc.values.val1, dp.val1, 3.0 * mc.std_errors.val1,
                              "monte carlo, 3 sigma"));
    out.push_back(make_report("game value N=10 p=0.25 val2", mc.values.val2, dp.val2, 3.0 * mc.std_errors.val2,
                              "monte carlo, 3 sigma"));
  }

  {
    // Reference shifted cutoffs for N = 10.
    const double ps[] = {0.1, 0.2, 0.25, 1.0 / 3.0, std::exp(-1.0), 0.5};
    const int expected[] = {4, 5, 5, 5, 5, 6};
    int mismatches = 0;
    for (int i = 0; i < 6; ++i)
      if (build_game_tables(make_config(10, ps[i])).ntilde != expected[i]) ++mismatches;
    out.push_back(make_report("ntilde mismatches (N=10 row)", 0.0, mismatches, 0.0, "reference values"));
  }
  return out;
}

}  // namespace bestchoice

#endif
