#ifndef BESTCHOICE_VALUATION_HPP
#define BESTCHOICE_VALUATION_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <thread>
#include <vector>

#include "bestchoice/equilibrium.hpp"
#include "bestchoice/errors.hpp"
#include "bestchoice/models.hpp"
#include "bestchoice/numerics.hpp"

// Game values under the classified action profile: exact backward induction
// over record states, and a seeded Monte Carlo of the same play.
namespace bestchoice {

enum class player { one = 0, two = 1 };

struct value_pair {
  double val1 = 0.0;
  double val2 = 0.0;
};

// How a stop is scored.
//   margin_transfer: the stage-game cells. The taker scores its own margin,
//     the other player scores minus its own margin; a joint claim is the
//     p-weighted mixture of the two outcomes.
//   stopper_margin: the taker scores its margin, the other scores 0.
// Absorption without a stop scores (0, 0) in both.
enum class accounting { margin_transfer, stopper_margin };

constexpr std::string_view to_string(accounting a) {
  return a == accounting::margin_transfer ? "margin_transfer" : "stopper_margin";
}

inline payoff_cell stage_payoff(equilibrium_kind kind, int n, double x, const game_tables& t,
                                accounting acc = accounting::margin_transfer) {
  const double p = t.config.priority;
  const double a = t.w1_at(n);
  const double b = w2({n, x}, t.config);
  if (acc == accounting::margin_transfer) {
    switch (kind) {
      case equilibrium_kind::SS: return {(2.0 * p - 1.0) * a, (1.0 - 2.0 * p) * b};
      case equilibrium_kind::SF: return {a, -b};
      case equilibrium_kind::FS: return {-a, b};
      case equilibrium_kind::FF: break;
    }
  } else {
    switch (kind) {
      case equilibrium_kind::SS: return {p * a, (1.0 - p) * b};
      case equilibrium_kind::SF: return {a, 0.0};
      case equilibrium_kind::FS: return {0.0, b};
      case equilibrium_kind::FF: break;
    }
  }
  throw domain_error("stage_payoff: FF has no stage payoff");
}

// V_i(n, .) for every record index n, stored as values at Gauss-Legendre
// nodes on each segment between consecutive thresholds. On a segment every
// V_i(n, .) is a polynomial of degree <= N - n, so with order > N the node
// table is an exact representation.
class value_function {
 public:
  value_function(int horizon, std::vector<double> bounds, int order)
      : horizon_(horizon), bounds_(std::move(bounds)), rule_(order) {
    const std::size_t size = node_count();
    for (auto& per_player : values_) per_player.assign(horizon_, std::vector<double>(size, 0.0));
    for (auto& per_player : tails_) per_player.assign(horizon_, std::vector<double>(size, 0.0));
    for (auto& per_player : suffix_) per_player.assign(horizon_, std::vector<double>(segments() + 1, 0.0));
    build_integration_matrix();
  }

  int horizon() const { return horizon_; }
  int order() const { return rule_.order(); }
  int segments() const { return static_cast<int>(bounds_.size()) - 1; }
  std::size_t node_count() const { return static_cast<std::size_t>(segments()) * order(); }
  const std::vector<double>& bounds() const { return bounds_; }

  double node(int s, int j) const {
    const double a = bounds_[s], b = bounds_[s + 1];
    return 0.5 * (a + b) + 0.5 * (b - a) * rule_.nodes[j];
  }

  // Interpolated V_i(n, x).
  double value(player who, int n, double x) const {
    const int s = segment_of(x);
    const double a = bounds_[s], b = bounds_[s + 1];
    return rule_.interpolate(segment_values(who, n, s), (2.0 * x - a - b) / (b - a));
  }

  // int_x^1 V_i(n, y) dy.
  double tail_integral(player who, int n, double x) const {
    if (x >= 1.0) return 0.0;
    x = std::max(x, 0.0);
    const int s = segment_of(x);
    const double b = bounds_[s + 1];
    const double a = bounds_[s];
    const auto vals = segment_values(who, n, s);
    double partial = 0.0;
    const double half = 0.5 * (b - x), mid = 0.5 * (b + x);
    for (int m = 0; m < order(); ++m) {
      const double y = mid + half * rule_.nodes[m];
      partial += rule_.weights[m] * rule_.interpolate(vals, (2.0 * y - a - b) / (b - a));
    }
    return half * partial + suffix_[idx(who)][n - 1][s + 1];
  }

  double integral(player who, int n) const { return suffix_[idx(who)][n - 1][0]; }

  // Tail integral at the stored nodes, available once `finalize(n)` ran.
  double node_tail(player who, int n, std::size_t flat) const { return tails_[idx(who)][n - 1][flat]; }

  void set(player who, int n, std::size_t flat, double v) { values_[idx(who)][n - 1][flat] = v; }

  // Precompute segment integrals and node tail integrals for index n.
  void finalize(int n) {
    for (int w = 0; w < 2; ++w) {
      const auto& vals = values_[w][n - 1];
      auto& suffix = suffix_[w][n - 1];
      auto& tails = tails_[w][n - 1];
      suffix[segments()] = 0.0;
      for (int s = segments() - 1; s >= 0; --s) {
        const double half = 0.5 * (bounds_[s + 1] - bounds_[s]);
        const double* seg = vals.data() + static_cast<std::size_t>(s) * order();
        double full = 0.0;
        for (int j = 0; j < order(); ++j) full += rule_.weights[j] * seg[j];
        suffix[s] = suffix[s + 1] + half * full;
        for (int i = 0; i < order(); ++i) {
          double part = 0.0;
          for (int j = 0; j < order(); ++j) part += to_right_[i * order() + j] * seg[j];
          tails[static_cast<std::size_t>(s) * order() + i] = half * part + suffix[s + 1];
        }
      }
    }
  }

 private:
  static int idx(player who) { return static_cast<int>(who); }

  int segment_of(double x) const {
    const auto it = std::upper_bound(bounds_.begin(), bounds_.end(), x);
    const int s = static_cast<int>(it - bounds_.begin()) - 1;
    return std::clamp(s, 0, segments() - 1);
  }

  std::span<const double> segment_values(player who, int n, int s) const {
    const auto& vals = values_[idx(who)][n - 1];
    return {vals.data() + static_cast<std::size_t>(s) * order(), static_cast<std::size_t>(order())};
  }

  // to_right_[i][j] = int_{t_i}^{1} l_j(t) dt on the reference interval.
  void build_integration_matrix() {
    const int q = order();
    to_right_.assign(static_cast<std::size_t>(q) * q, 0.0);
    std::vector<double> unit(q, 0.0);
    for (int i = 0; i < q; ++i) {
      const double lo = rule_.nodes[i];
      const double half = 0.5 * (1.0 - lo), mid = 0.5 * (1.0 + lo);
      for (int m = 0; m < q; ++m) {
        const double t = mid + half * rule_.nodes[m];
        for (int j = 0; j < q; ++j) {
          std::fill(unit.begin(), unit.end(), 0.0);
          unit[j] = 1.0;
          to_right_[i * q + j] += half * rule_.weights[m] * rule_.interpolate(unit, t);
        }
      }
    }
  }

  int horizon_;
  std::vector<double> bounds_;
  numerics::legendre_rule rule_;
  std::array<std::vector<std::vector<double>>, 2> values_;
  std::array<std::vector<std::vector<double>>, 2> tails_;
  std::array<std::vector<std::vector<double>>, 2> suffix_;
  std::vector<double> to_right_;
};

// Expected payoff to `who` if nobody stops at (n, x):
// sum_{k>n} x^(k-n-1) int_x^1 V(k, y) dy. Absorption contributes 0.
inline double continuation(int n, double x, const value_function& v, player who) {
  double sum = 0.0, power = 1.0;
  for (int k = n + 1; k <= v.horizon(); ++k) {
    sum += power * v.tail_integral(who, k, x);
    power *= x;
  }
  return sum;
}

namespace detail {

inline std::vector<double> threshold_bounds(const threshold_vector& xs) {
  std::vector<double> b{0.0, 1.0};
  for (double x : xs.values())
    if (x > 0.0 && x < 1.0) b.push_back(x);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

// Backward sweep from n = N to 1. `stage(n, x)` returns the payoff pair for
// a stop at (n, x), or nothing when both players pass.
template <typename Stage>
value_function sweep(const threshold_vector& xs, Stage&& stage) {
  const int big_n = xs.horizon();
  value_function v(big_n, threshold_bounds(xs), big_n + 4);
  for (int n = big_n; n >= 1; --n) {
    for (int s = 0; s < v.segments(); ++s) {
      for (int j = 0; j < v.order(); ++j) {
        const double x = v.node(s, j);
        const std::size_t flat = static_cast<std::size_t>(s) * v.order() + j;
        payoff_cell cell;
        if (const std::optional<payoff_cell> stop = stage(n, x)) {
          cell = *stop;
        } else {
          double power = 1.0;
          for (int k = n + 1; k <= big_n; ++k) {
            cell.player1 += power * v.node_tail(player::one, k, flat);
            cell.player2 += power * v.node_tail(player::two, k, flat);
            power *= x;
          }
        }
        v.set(player::one, n, flat, cell.player1);
        v.set(player::two, n, flat, cell.player2);
      }
    }
    v.finalize(n);
  }
  return v;
}

}  // namespace detail

struct induction_result {
  value_function values;
  value_pair game_value;
};

// val_i = int_0^1 V_i(1, x) dx since the first observation is always a record.
inline induction_result backward_induce(const game_tables& t, accounting acc = accounting::margin_transfer) {
  if (t.config.priority > 0.5)
    throw unsupported_priority("backward_induce: equilibrium rules require priority <= 0.5");
  auto v = detail::sweep(t.xthresholds, [&](int n, double x) -> std::optional<payoff_cell> {
    const equilibrium_kind kind = classify_state(n, x, t);
    if (kind == equilibrium_kind::FF) return std::nullopt;
    return stage_payoff(kind, n, x, t, acc);
  });
  const value_pair val{v.integral(player::one, 1), v.integral(player::two, 1)};
  return {std::move(v), val};
}

// Win probability of the solo full-information threshold rule "stop at the
// first record with x >= x_n". Reported as player two's value.
inline double fullinfo_rule_value(const threshold_vector& xs) {
  const int big_n = xs.horizon();
  auto v = detail::sweep(xs, [&](int n, double x) -> std::optional<payoff_cell> {
    if (x >= xs.at(n)) return payoff_cell{0.0, numerics::ipow(x, big_n - n)};
    return std::nullopt;
  });
  return v.integral(player::two, 1);
}

// --- Monte Carlo ----------------------------------------------------------

struct sim_config {
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 20240611;
  std::int64_t batch = 1 << 16;

  void validate() const {
    if (samples < 1) throw domain_error("sim_config: samples must be at least 1");
    if (batch < 1) throw domain_error("sim_config: batch must be at least 1");
  }
};

struct sim_result {
  value_pair values;
  value_pair std_errors;
  std::int64_t samples = 0;
};

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Batch b of master seed s draws from mt19937_64 seeded with mix64(s ^ mix64(b)).
constexpr std::uint64_t batch_seed(std::uint64_t master, std::uint64_t batch_index) {
  return mix64(master ^ mix64(batch_index));
}

// 53-bit uniform on [0, 1).
inline double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

namespace detail {

struct moment_sums {
  double s1 = 0.0, s2 = 0.0, q1 = 0.0, q2 = 0.0;
  std::int64_t count = 0;
};

// Runs `path(engine) -> payoff_cell` over all batches, possibly on several
// threads, and combines the batch sums in batch order.
template <typename Path>
sim_result run_batches(const sim_config& sim, Path&& path) {
  sim.validate();
  const std::int64_t batches = (sim.samples + sim.batch - 1) / sim.batch;
  std::vector<moment_sums> sums(static_cast<std::size_t>(batches));
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t b = next++; b < batches; b = next++) {
      std::mt19937_64 engine(batch_seed(sim.seed, static_cast<std::uint64_t>(b)));
      const std::int64_t count = std::min(sim.batch, sim.samples - b * sim.batch);
      moment_sums m;
      for (std::int64_t i = 0; i < count; ++i) {
        const payoff_cell c = path(engine);
        m.s1 += c.player1;
        m.s2 += c.player2;
        m.q1 += c.player1 * c.player1;
        m.q2 += c.player2 * c.player2;
      }
      m.count = count;
      sums[static_cast<std::size_t>(b)] = m;
    }
  };
  const auto threads = static_cast<std::int64_t>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::jthread> pool;
  for (std::int64_t i = 1; i < std::min(threads, batches); ++i) pool.emplace_back(worker);
  worker();
  pool.clear();

  moment_sums total;
  for (const auto& m : sums) {
    total.s1 += m.s1;
    total.s2 += m.s2;
    total.q1 += m.q1;
    total.q2 += m.q2;
    total.count += m.count;
  }
  const double n = static_cast<double>(total.count);
  sim_result r;
  r.samples = total.count;
  r.values = {total.s1 / n, total.s2 / n};
  auto se = [n](double s, double q) {
    if (n < 2) return 0.0;
    const double var = std::max(0.0, (q - s * s / n) / (n - 1));
    return std::sqrt(var / n);
  };
  r.std_errors = {se(total.s1, total.q1), se(total.s2, total.q2)};
  return r;
}

}  // namespace detail

// Plays the classified profile on simulated sequences and scores the first
// stop. A joint claim goes to Player I when a fresh uniform falls below p.
inline sim_result simulate(const game_tables& t, const sim_config& sim,
                           accounting acc = accounting::margin_transfer) {
  if (t.config.priority > 0.5)
    throw unsupported_priority("simulate: equilibrium rules require priority <= 0.5");
  const int big_n = t.horizon();
  const double p = t.config.priority;
  return detail::run_batches(sim, [&](std::mt19937_64& g) -> payoff_cell {
    double best = -1.0;
    for (int n = 1; n <= big_n; ++n) {
      const double x = uniform01(g);
      if (x <= best) continue;
      best = x;
      const equilibrium_kind kind = classify_state(n, x, t);
      if (kind == equilibrium_kind::FF) continue;
      if (kind == equilibrium_kind::SS) {
        const bool first_takes = uniform01(g) < p;
        const payoff_cell sf = stage_payoff(equilibrium_kind::SF, n, x, t, acc);
        const payoff_cell fs = stage_payoff(equilibrium_kind::FS, n, x, t, acc);
        return first_takes ? sf : fs;
      }
      return stage_payoff(kind, n, x, t, acc);
    }
    return {};
  });
}

inline sim_result simulate(const problem_config& cfg, const game_tables& t, const sim_config& sim,
                           accounting acc = accounting::margin_transfer) {
  if (cfg.horizon != t.config.horizon || cfg.priority != t.config.priority)
    throw domain_error("simulate: config does not match tables");
  return simulate(t, sim, acc);
}

// Diagnostic: the realized game scored by who ends up holding the overall
// maximum. Play follows the classified profile until the first claim; the
// player left over then continues alone with its solo rule (I: first
// candidate at index >= n*, II: first record with x >= x_n).
inline sim_result simulate_realized_wins(const game_tables& t, const sim_config& sim) {
  if (t.config.priority > 0.5)
    throw unsupported_priority("simulate_realized_wins: equilibrium rules require priority <= 0.5");
  const int big_n = t.horizon();
  const double p = t.config.priority;
  return detail::run_batches(sim, [&](std::mt19937_64& g) -> payoff_cell {
    std::vector<double> xs(big_n);
    for (double& x : xs) x = uniform01(g);
    const double coin = uniform01(g);
    int pick1 = 0, pick2 = 0;
    double best = -1.0;
    for (int n = 1; n <= big_n; ++n) {
      const double x = xs[n - 1];
      if (x <= best) continue;
      best = x;
      if (pick1 == 0 && pick2 == 0) {
        const equilibrium_kind kind = classify_state(n, x, t);
        if (kind == equilibrium_kind::SS) (coin < p ? pick1 : pick2) = n;
        else if (kind == equilibrium_kind::SF) pick1 = n;
        else if (kind == equilibrium_kind::FS) pick2 = n;
      } else if (pick1 == 0 && n >= t.nstar) {
        pick1 = n;
      } else if (pick2 == 0 && x >= t.x(n)) {
        pick2 = n;
      }
    }
    const int argmax = static_cast<int>(std::max_element(xs.begin(), xs.end()) - xs.begin()) + 1;
    return {pick1 == argmax ? 1.0 : 0.0, pick2 == argmax ? 1.0 : 0.0};
  });
}

}  // namespace bestchoice

#endif
