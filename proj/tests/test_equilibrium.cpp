#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "bestchoice/equilibrium.hpp"

namespace bc = bestchoice;
using bc::equilibrium_kind;

namespace {

const double e_inv = std::exp(-1.0);

const bc::game_tables& tables_10_025() {
  static const bc::game_tables t = bc::build_game_tables(bc::make_config(10, 0.25));
  return t;
}

}  // namespace

TEST(W1, Examples) {
  const auto cfg = bc::make_config(10, 0.25);
  EXPECT_EQ(bc::w1(10, cfg), 1.0);
  EXPECT_NEAR(bc::w1(4, cfg), 0.00174603174603, 1e-13);
  EXPECT_NEAR(bc::w1(3, cfg), -0.0986904761905, 1e-12);
  EXPECT_THROW(bc::w1(0, cfg), bc::domain_error);
}

TEST(W1, EqualsStopMinusContinueAndFlipsSignAtCutoff) {
  for (int big_n = 5; big_n <= 200; ++big_n) {
    const auto cfg = bc::make_config(big_n, 0.5);
    const int cutoff = bc::secretary_cutoff(cfg);
    for (int n = 1; n <= big_n; ++n) {
      const double w = bc::w1(n, cfg);
      EXPECT_NEAR(w, bc::secretary_stop_reward(n, cfg) - bc::secretary_continue_reward(n, cfg), 1e-12);
      if (n < cutoff) EXPECT_LT(w, 0.0);
      else EXPECT_GE(w, 0.0);
    }
  }
}

TEST(W2, Examples) {
  const auto cfg = bc::make_config(10, 0.25);
  EXPECT_EQ(bc::w2({10, 0.3}, cfg), 1.0);
  EXPECT_DOUBLE_EQ(bc::w2({9, 0.5}, cfg), 0.0);
  EXPECT_DOUBLE_EQ(bc::w2({9, 0.8}, cfg), 0.6);
  EXPECT_DOUBLE_EQ(bc::w2({7, 0.0}, cfg), -1.0 / 3.0);
  EXPECT_THROW(bc::w2({3, 1.5}, cfg), bc::domain_error);
  EXPECT_THROW(bc::w2({3, -0.1}, cfg), bc::domain_error);
}

// The factored form x^(N-n) - x^(N-n) sum_j (x^(j-N-1) - 1)/(N-j+1), evaluated literally.
TEST(W2, MatchesLiteralFormulaAndStopMinusContinue) {
  for (int big_n : {3, 10, 25}) {
    const auto cfg = bc::make_config(big_n, 0.5);
    for (int n = 1; n <= big_n; ++n) {
      for (int i = 1; i <= 19; ++i) {
        const double x = 0.05 * i;
        double sum = 0.0;
        for (int j = n + 1; j <= big_n; ++j) sum += (std::pow(x, j - big_n - 1) - 1.0) / (big_n - j + 1);
        const double literal = std::pow(x, big_n - n) - std::pow(x, big_n - n) * sum;
        const double w = bc::w2({n, x}, cfg);
        EXPECT_NEAR(w, literal, 1e-9 * std::max(1.0, std::abs(literal)));
        EXPECT_NEAR(w, bc::fullinfo_stop_reward({n, x}, cfg) - bc::fullinfo_continue_reward({n, x}, cfg), 1e-9);
      }
    }
  }
}

TEST(W2, VanishesAtThresholdsAndChangesSignThere) {
  for (int big_n : {5, 10, 50}) {
    const auto cfg = bc::make_config(big_n, 0.5);
    const auto xs = bc::fullinfo_thresholds(cfg);
    for (int n = 1; n < big_n; ++n) {
      EXPECT_LT(std::abs(bc::w2({n, xs.at(n)}, cfg)), 1e-9);
      EXPECT_LT(bc::w2({n, xs.at(n) * 0.98}, cfg), 0.0);
      EXPECT_GT(bc::w2({n, std::min(1.0, xs.at(n) * 1.02)}, cfg), 0.0);
    }
  }
}

TEST(Tv1GivenX, Examples) {
  const auto& t = tables_10_025();
  EXPECT_EQ(bc::tv1_given_x(10, 0.4, t), 0.0);
  // single remaining stage: (1 - x)(2p - 1) w1(N), w1(N) = 1
  for (double x : {0.0, 0.2, 0.9}) EXPECT_NEAR(bc::tv1_given_x(9, x, t), (1.0 - x) * (2 * 0.25 - 1.0), 1e-15);
}

TEST(Tv1GivenX, HalfPriorityDropsJointClaimTerm) {
  const auto t = bc::build_game_tables(bc::make_config(10, 0.5));
  for (int n = 4; n < 10; ++n) {
    for (double x : {0.1, 0.5, 0.95}) {
      double direct = 0.0;
      for (int k = n + 1; k <= 10; ++k)
        direct += std::pow(x, k - n - 1) * (std::max(x, t.x(k)) - x) * t.w1_at(k);
      EXPECT_NEAR(bc::tv1_given_x(n, x, t), direct, 1e-14);
    }
  }
}

// Independent route: the interval-length collapse re-derived as a literal
// nested integral over the next record's value y.
TEST(Tv1, MatchesNestedIntegral) {
  const auto& t = tables_10_025();
  const double p = 0.25;
  for (int n = 4; n < 10; ++n) {
    const double top = t.x(n);
    auto inner = [&](double x) {
      double s = 0.0;
      for (int k = n + 1; k <= 10; ++k) {
        auto integrand = [&](double y) { return y < t.x(k) ? t.w1_at(k) : (2 * p - 1) * t.w1_at(k); };
        const double cut[] = {t.x(k)};
        s += std::pow(x, k - n - 1) * bc::numerics::integrate_piecewise(integrand, x, 1.0, cut);
      }
      return s;
    };
    std::vector<double> cuts;
    for (int k = n + 1; k <= 10; ++k) cuts.push_back(t.x(k));
    const double avg = bc::numerics::integrate_piecewise(inner, 0.0, top, cuts, {1e-11, 200}) / top;
    EXPECT_NEAR(bc::tv1(n, t), avg, 1e-9) << "n=" << n;
  }
  EXPECT_EQ(bc::tv1(10, t), 0.0);
}

TEST(GameTables, Invariants) {
  for (int big_n : {5, 10, 20}) {
    for (double p : {0.1, 0.25, 0.5}) {
      const auto t = bc::build_game_tables(bc::make_config(big_n, p));
      EXPECT_LE(t.nstar, t.ntilde);
      EXPECT_LE(t.ntilde, big_n);
      EXPECT_EQ(t.tv1_at(big_n), 0.0);
      for (int n = 1; n <= big_n; ++n) EXPECT_EQ(t.w1_at(n) >= 0.0, n >= t.nstar);
    }
  }
}

TEST(ShiftedCutoff, KnownEntries) {
  EXPECT_EQ(tables_10_025().ntilde, 5);
  EXPECT_EQ(tables_10_025().nstar, 4);
  EXPECT_EQ(bc::build_game_tables(bc::make_config(10, 0.5)).ntilde, 6);
  for (double p : {0.1, 0.2, 0.25, 1.0 / 3.0, e_inv, 0.5})
    EXPECT_EQ(bc::build_game_tables(bc::make_config(5, p)).ntilde, 3);
  EXPECT_EQ(bc::build_game_tables(bc::make_config(50, 0.5)).ntilde, 31);
}

TEST(ShiftedCutoff, IsFirstIndexWhereOneStepValueDoesNotExceedMargin) {
  const auto& t = tables_10_025();
  for (int n = t.nstar; n < t.ntilde; ++n) EXPECT_GT(t.tv1_at(n), t.w1_at(n));
  EXPECT_LE(t.tv1_at(t.ntilde), t.w1_at(t.ntilde));
}

TEST(ShiftedCutoff, NondecreasingInPriority) {
  for (int big_n : {5, 10, 20, 30, 50}) {
    int prev = 0;
    for (double p : {0.1, 0.2, 0.25, 1.0 / 3.0, e_inv, 0.5}) {
      const auto t = bc::build_game_tables(bc::make_config(big_n, p));
      EXPECT_GE(t.ntilde, prev);
      EXPECT_GE(t.ntilde, t.nstar);
      prev = t.ntilde;
    }
  }
}

TEST(FsCondition, Examples) {
  EXPECT_TRUE(bc::fs_condition(3, 0.9, bc::make_config(10, 0.25)));
  EXPECT_TRUE(bc::fs_condition(2, 0.95, bc::make_config(10, 0.5)));
  EXPECT_THROW(bc::fs_condition(3, 0.0, bc::make_config(10, 0.25)), bc::domain_error);
  EXPECT_THROW(bc::fs_condition(3, 1.0, bc::make_config(10, 0.25)), bc::domain_error);
}

TEST(FsCondition, HoldsOnGrid) {
  for (int big_n : {10, 20}) {
    for (double p : {0.1, 0.25, 0.5}) {
      const auto cfg = bc::make_config(big_n, p);
      const int cutoff = bc::secretary_cutoff(cfg);
      for (int n = 1; n < cutoff; ++n)
        for (int i = 1; i <= 19; ++i) EXPECT_TRUE(bc::fs_condition(n, 0.05 * i, cfg)) << n << " " << i;
    }
  }
}

TEST(ClassifyState, Examples) {
  const auto& t = tables_10_025();
  EXPECT_NEAR(t.x(6), 0.824589583005756, 1e-11);
  EXPECT_EQ(bc::classify_state(6, 0.9, t), equilibrium_kind::SS);
  EXPECT_EQ(bc::classify_state(3, 0.95, t), equilibrium_kind::FS);
  EXPECT_EQ(bc::classify_state(4, 0.5, t), equilibrium_kind::FF);
  EXPECT_EQ(bc::classify_state(5, 0.5, t), equilibrium_kind::SF);
  EXPECT_EQ(bc::classify_state(2, 0.1, t), equilibrium_kind::FF);
  EXPECT_EQ(bc::classify_state(10, 0.0, t), equilibrium_kind::SS);
}

TEST(ClassifyState, BoundaryTiesGoToStopSide) {
  const auto& t = tables_10_025();
  EXPECT_EQ(bc::classify_state(6, t.x(6), t), equilibrium_kind::SS);
  EXPECT_EQ(bc::classify_state(2, t.x(2), t), equilibrium_kind::FS);
  EXPECT_EQ(bc::classify_state(t.ntilde, 0.3, t), equilibrium_kind::SF);
}

TEST(ClassifyState, Errors) {
  const auto& t = tables_10_025();
  EXPECT_THROW(bc::classify_state(3, 1.2, t), bc::domain_error);
  EXPECT_THROW(bc::classify_state(0, 0.5, t), bc::domain_error);
  const auto high = bc::build_game_tables(bc::make_config(10, 0.7));
  EXPECT_THROW(bc::classify_state(5, 0.5, high), bc::unsupported_priority);
}

TEST(Bimatrix, CellsFollowStageGame) {
  const auto& t = tables_10_025();
  const double a = t.w1_at(6), b = bc::w2({6, 0.7}, t.config);
  const auto m = bc::make_bimatrix(6, 0.7, t, {0.11, 0.22});
  EXPECT_DOUBLE_EQ(m.at(bc::action::stop, bc::action::stop).player1, -0.5 * a);
  EXPECT_DOUBLE_EQ(m.at(bc::action::stop, bc::action::stop).player2, 0.5 * b);
  EXPECT_EQ(m.at(bc::action::stop, bc::action::forgo).player1, a);
  EXPECT_EQ(m.at(bc::action::stop, bc::action::forgo).player2, -b);
  EXPECT_EQ(m.at(bc::action::forgo, bc::action::stop).player1, -a);
  EXPECT_EQ(m.at(bc::action::forgo, bc::action::stop).player2, b);
  EXPECT_EQ(m.at(bc::action::forgo, bc::action::forgo).player1, 0.11);
  EXPECT_EQ(m.at(bc::action::forgo, bc::action::forgo).player2, 0.22);
}

TEST(Bimatrix, PureNashCheck) {
  bc::bimatrix m;
  // prisoner's-dilemma-like: (stop, stop) is the unique equilibrium
  m.cells[0][0] = {1, 1};
  m.cells[0][1] = {3, 0};
  m.cells[1][0] = {0, 3};
  m.cells[1][1] = {2, 2};
  EXPECT_TRUE(bc::is_pure_nash(m, equilibrium_kind::SS));
  EXPECT_FALSE(bc::is_pure_nash(m, equilibrium_kind::FF));
  EXPECT_FALSE(bc::is_pure_nash(m, equilibrium_kind::SF));
  EXPECT_FALSE(bc::is_pure_nash(m, equilibrium_kind::FS));
}

// Stop-side cells do not depend on continuation values, so these deviations
// can be checked from the stage game alone.
TEST(Bimatrix, StopSideDeviationsNeverPay) {
  for (double p : {0.1, 0.25, 0.5}) {
    const auto t = bc::build_game_tables(bc::make_config(10, p));
    for (int n = 1; n <= 10; ++n) {
      for (int i = 0; i < 50; ++i) {
        const double x = (i + 0.5) / 50.0;
        const auto kind = bc::classify_state(n, x, t);
        const auto m = bc::make_bimatrix(n, x, t, {0.0, 0.0});
        using bc::action;
        if (kind == equilibrium_kind::SS) {
          EXPECT_GE(m.at(action::stop, action::stop).player1, m.at(action::forgo, action::stop).player1);
          EXPECT_GE(m.at(action::stop, action::stop).player2, m.at(action::stop, action::forgo).player2);
        }
        if (kind == equilibrium_kind::SF) {
          EXPECT_GE(m.at(action::stop, action::forgo).player2, m.at(action::stop, action::stop).player2);
        }
        if (kind == equilibrium_kind::FS) {
          EXPECT_GE(m.at(action::forgo, action::stop).player1, m.at(action::stop, action::stop).player1);
        }
      }
    }
  }
}

TEST(RegionMap, ShiftAtTenObjects) {
  const auto& t = tables_10_025();
  const auto g = bc::region_map(t, 0.01);
  ASSERT_EQ(g.xs.size(), 101u);
  EXPECT_EQ(g.xs.front(), 0.0);
  EXPECT_EQ(g.xs.back(), 1.0);
  // FF below the threshold at n = 4, SF from n = 5 on
  for (std::size_t j = 0; j < g.xs.size(); ++j) {
    if (g.xs[j] < t.x(4)) {
      EXPECT_EQ(g.at(4, j), equilibrium_kind::FF);
    }
    if (g.xs[j] < t.x(5)) {
      EXPECT_EQ(g.at(5, j), equilibrium_kind::SF);
    }
    EXPECT_EQ(g.at(10, j), equilibrium_kind::SS);
  }
}

TEST(RegionMap, EachRowIsTwoBlocks) {
  for (double p : {0.1, 0.25, 0.5}) {
    const auto t = bc::build_game_tables(bc::make_config(10, p));
    const auto g = bc::region_map(t, 0.02);
    for (int n = 1; n <= 10; ++n) {
      int changes = 0;
      for (std::size_t j = 1; j < g.xs.size(); ++j) changes += g.at(n, j) != g.at(n, j - 1);
      EXPECT_LE(changes, 1);
    }
  }
}

TEST(RegionMap, HorizonFiveSfStartsAtThree) {
  for (double p : {0.1, 0.2, 0.25, 1.0 / 3.0, e_inv, 0.5}) {
    const auto t = bc::build_game_tables(bc::make_config(5, p));
    const auto g = bc::region_map(t, 0.05);
    EXPECT_NE(g.at(2, 0), equilibrium_kind::SF);
    EXPECT_EQ(g.at(3, 0), equilibrium_kind::SF);
  }
}

TEST(RegionMap, RejectsBadStep) {
  const auto& t = tables_10_025();
  EXPECT_THROW(bc::region_map(t, 0.0), bc::domain_error);
  EXPECT_THROW(bc::region_map(t, 0.2), bc::domain_error);
}
