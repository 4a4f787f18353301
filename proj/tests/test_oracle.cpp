#include <cmath>

#include <gtest/gtest.h>

#include "bestchoice/oracle.hpp"
#include "bestchoice/verify.hpp"

namespace bc = bestchoice;
namespace oracle = bestchoice::oracle;

namespace {

// P(win) for cutoff r: (r-1)/N * sum_{k=r}^{N} 1/(k-1), and 1/N for r = 1.
double cutoff_formula(int big_n, int r) {
  if (r == 1) return 1.0 / big_n;
  double s = 0.0;
  for (int k = r; k <= big_n; ++k) s += 1.0 / (k - 1);
  return (r - 1.0) / big_n * s;
}

}  // namespace

TEST(SecretaryExhaustive, ThirteenThirtieths) {
  EXPECT_EQ(oracle::secretary_exhaustive_exact(5, 3), (oracle::rational{13, 30}));
  EXPECT_DOUBLE_EQ(oracle::secretary_exhaustive(5, 3), 13.0 / 30.0);
}

TEST(SecretaryExhaustive, MatchesFormula) {
  for (int big_n = 2; big_n <= 8; ++big_n)
    for (int r = 1; r <= big_n; ++r)
      EXPECT_NEAR(oracle::secretary_exhaustive(big_n, r), cutoff_formula(big_n, r), 1e-14) << big_n << " " << r;
}

TEST(SecretaryExhaustive, Errors) {
  EXPECT_THROW(oracle::secretary_exhaustive(9, 3), bc::too_large);
  EXPECT_THROW(oracle::secretary_exhaustive(5, 0), bc::domain_error);
  EXPECT_THROW(oracle::secretary_exhaustive(5, 6), bc::domain_error);
  EXPECT_THROW(oracle::secretary_exhaustive(1, 1), bc::domain_error);
}

TEST(FullInfoMc, PassesAtTenObjects) {
  const auto r = oracle::fullinfo_mc_check(bc::fullinfo_thresholds(10), 200'000, 4);
  EXPECT_TRUE(r.passed) << r.oracle_value << " vs " << r.solver_value;
}

TEST(GameExhaustive, HorizonTwoMatchesClosedForm) {
  for (double p : {0.0, 0.25, 0.5}) {
    const auto v = oracle::game_exhaustive_small(2, p, 2000);
    EXPECT_NEAR(v.val1, 0.0, 1e-4);
    EXPECT_NEAR(v.val2, 0.5 * (1.0 - p), 1e-4);
  }
}

TEST(GameExhaustive, HorizonThreeMatchesInduction) {
  for (double p : {0.0, 0.25, 0.5}) {
    const auto v = oracle::game_exhaustive_small(3, p, 1000);
    const auto d = bc::backward_induce(bc::build_game_tables(bc::make_config(3, p))).game_value;
    EXPECT_NEAR(v.val1, d.val1, 1e-3) << p;
    EXPECT_NEAR(v.val2, d.val2, 1e-3) << p;
  }
}

TEST(GameExhaustive, Errors) {
  EXPECT_THROW(oracle::game_exhaustive_small(4, 0.25, 1000), bc::too_large);
  EXPECT_THROW(oracle::game_exhaustive_small(3, 0.25, 999), bc::domain_error);
}

TEST(MakeReport, PassFlag) {
  EXPECT_TRUE(oracle::make_report("q", 1.0, 1.0 + 1e-10, 1e-9, "m").passed);
  EXPECT_FALSE(oracle::make_report("q", 1.0, 1.1, 1e-9, "m").passed);
}

TEST(VerificationSuite, AllPassOnCorrectBuild) {
  const auto reports = bc::verification_suite();
  ASSERT_GE(reports.size(), 15u);
  for (const auto& r : reports) EXPECT_TRUE(r.passed) << r.quantity << ": " << r.abs_diff << " > " << r.tolerance;
}

// Mutation check: a threshold table with x_5 nudged by 1e-3 must be caught.
TEST(VerificationSuite, DetectsTamperedThreshold) {
  auto vals = bc::fullinfo_thresholds(10).values();
  vals[4] += 1e-3;
  bc::verification_options opt;
  opt.thresholds_n10 = bc::threshold_vector(vals);
  const auto reports = bc::verification_suite(opt);
  int failed = 0;
  for (const auto& r : reports) failed += !r.passed;
  EXPECT_GE(failed, 1);
}
