#ifndef BESTCHOICE_ORACLE_HPP
#define BESTCHOICE_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bestchoice/equilibrium.hpp"
#include "bestchoice/errors.hpp"
#include "bestchoice/models.hpp"
#include "bestchoice/valuation.hpp"

// Brute-force verifiers for tiny horizons. None of these share code with the
// value_function machinery they are used to check.
namespace bestchoice::oracle {

struct oracle_report {
  std::string quantity;
  double oracle_value = 0.0;
  double solver_value = 0.0;
  double abs_diff = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string method;
};

inline oracle_report make_report(std::string quantity, double oracle_value, double solver_value,
                                 double tolerance, std::string method) {
  oracle_report r;
  r.quantity = std::move(quantity);
  r.oracle_value = oracle_value;
  r.solver_value = solver_value;
  r.abs_diff = std::abs(oracle_value - solver_value);
  r.tolerance = tolerance;
  r.passed = r.abs_diff <= tolerance;
  r.method = std::move(method);
  return r;
}

struct rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const rational&, const rational&) = default;
};

inline rational reduced(std::int64_t num, std::int64_t den) {
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? rational{0, 1} : rational{num / g, den / g};
}

// Exact success probability of "stop at the first candidate at index >= r",
// over all N! equally likely rank orders.
inline rational secretary_exhaustive_exact(int horizon, int cutoff) {
  if (horizon > 8) throw too_large("secretary_exhaustive: horizon must be at most 8");
  if (horizon < 2) throw domain_error("secretary_exhaustive: horizon must be at least 2");
  if (cutoff < 1 || cutoff > horizon) throw domain_error("secretary_exhaustive: cutoff out of range");
  std::vector<int> ranks(horizon);
  std::iota(ranks.begin(), ranks.end(), 0);
  std::int64_t wins = 0, total = 0;
  do {
    ++total;
    int best = -1;
    for (int n = 1; n <= horizon; ++n) {
      const int v = ranks[n - 1];
      if (v <= best) continue;
      best = v;
      if (n >= cutoff) {
        if (v == horizon - 1) ++wins;
        break;
      }
    }
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return reduced(wins, total);
}

inline double secretary_exhaustive(int horizon, int cutoff) {
  return secretary_exhaustive_exact(horizon, cutoff).value();
}

// Monte Carlo win rate of the full-information threshold rule against its
// backward-induction value; passes within 4 standard errors.
inline oracle_report fullinfo_mc_check(const threshold_vector& xs, std::int64_t samples, std::uint64_t seed) {
  const int big_n = xs.horizon();
  if (big_n < 1) throw domain_error("fullinfo_mc_check: empty threshold vector");
  if (samples < 1) throw domain_error("fullinfo_mc_check: samples must be positive");
  std::mt19937_64 g(batch_seed(seed, 0));
  std::vector<double> path(big_n);
  std::int64_t wins = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    for (double& x : path) x = uniform01(g);
    const double top = *std::max_element(path.begin(), path.end());
    double best = -1.0;
    for (int n = 1; n <= big_n; ++n) {
      const double x = path[n - 1];
      if (x <= best) continue;
      best = x;
      if (x >= xs.at(n)) {
        if (x == top) ++wins;
        break;
      }
    }
  }
  const double rate = static_cast<double>(wins) / samples;
  const double se = std::sqrt(rate * (1.0 - rate) / samples);
  return make_report("fullinfo_rule_value(N=" + std::to_string(big_n) + ")", rate, fullinfo_rule_value(xs),
                     4.0 * se, "monte carlo, " + std::to_string(samples) + " paths, 4 sigma");
}

namespace detail {

// Midpoint rule over the joint mesh of (X_1..X_N). Cell values u_i = (i+1/2)/m.
// A tie with the running maximum's cell counts half as a new record and
// half as not. Identical summands (all cells below the running maximum, and
// the stop payoffs above it) are summed in closed form rather than cell by
// cell; only cells where both players pass open a new level.
class joint_mesh {
 public:
  joint_mesh(const game_tables& t, int mesh) : t_(t), mesh_(mesh) {
    const int big_n = t.horizon();
    rows_.resize(big_n);
    for (int n = 1; n <= big_n; ++n) {
      auto& row = rows_[n - 1];
      row.stop.resize(mesh);
      row.prefix.assign(mesh + 1, {});
      for (int i = 0; i < mesh; ++i) {
        const double x = (i + 0.5) / mesh;
        const equilibrium_kind kind = classify_state(n, x, t);
        if (kind == equilibrium_kind::FF) {
          row.forgo.push_back(i);
        } else {
          row.stop[i] = stage_payoff(kind, n, x, t);
        }
        row.prefix[i + 1] = {row.prefix[i].player1 + row.stop[i].player1,
                             row.prefix[i].player2 + row.stop[i].player2};
      }
    }
  }

  value_pair run() {
    total_ = {};
    walk(1, -1, 1.0);
    return {total_.player1, total_.player2};
  }

 private:
  struct row_data {
    std::vector<payoff_cell> stop;    // zero where both pass
    std::vector<payoff_cell> prefix;  // prefix sums of `stop`
    std::vector<int> forgo;           // cells where both pass, ascending
  };

  void add(const payoff_cell& c, double w) {
    total_.player1 += w * c.player1;
    total_.player2 += w * c.player2;
  }

  void walk(int n, int top, double weight) {
    if (n > t_.horizon()) return;
    const row_data& row = rows_[n - 1];
    const double cell = weight / mesh_;
    // cells below the running maximum: no record
    if (top >= 0) walk(n + 1, top, cell * top);
    // tie with the running maximum's cell: half record, half not
    if (top >= 0) {
      walk(n + 1, top, 0.5 * cell);
      if (std::binary_search(row.forgo.begin(), row.forgo.end(), top)) walk(n + 1, top, 0.5 * cell);
      else add(row.stop[top], 0.5 * cell);
    }
    // strictly above: a new record at every cell
    const int first = top + 1;
    const payoff_cell& hi = row.prefix[mesh_];
    const payoff_cell& lo = row.prefix[first];
    add({hi.player1 - lo.player1, hi.player2 - lo.player2}, cell);
    for (auto it = std::lower_bound(row.forgo.begin(), row.forgo.end(), first); it != row.forgo.end(); ++it)
      walk(n + 1, *it, cell);
  }

  const game_tables& t_;
  int mesh_;
  std::vector<row_data> rows_;
  payoff_cell total_;
};

}  // namespace detail

// Game value pair by direct integration over (X_1..X_N) on a uniform mesh,
// with the joint-claim coin taken in expectation.
inline value_pair game_exhaustive_small(int horizon, double priority, int mesh) {
  if (horizon > 3) throw too_large("game_exhaustive_small: horizon must be at most 3");
  if (mesh < 1000) throw domain_error("game_exhaustive_small: mesh must be at least 1000");
  const game_tables t = build_game_tables(make_config(horizon, priority));
  return detail::joint_mesh(t, mesh).run();
}

}  // namespace bestchoice::oracle

#endif
