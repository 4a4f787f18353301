#ifndef BESTCHOICE_EQUILIBRIUM_HPP
#define BESTCHOICE_EQUILIBRIUM_HPP

#include <array>
#include <cmath>
#include <string_view>
#include <vector>

#include "bestchoice/errors.hpp"
#include "bestchoice/models.hpp"
#include "bestchoice/numerics.hpp"

// The two-player game: stop-minus-continue margins, the 2x2 stage game at a
// record, Player I's one-step continuation against a passing opponent, the
// shifted cutoff and the per-state equilibrium classification.
namespace bestchoice {

enum class action { stop = 0, forgo = 1 };

enum class equilibrium_kind { SS, SF, FS, FF };

constexpr std::string_view to_string(equilibrium_kind k) {
  switch (k) {
    case equilibrium_kind::SS: return "SS";
    case equilibrium_kind::SF: return "SF";
    case equilibrium_kind::FS: return "FS";
    case equilibrium_kind::FF: return "FF";
  }
  return "??";
}

constexpr action action_of_player1(equilibrium_kind k) {
  return (k == equilibrium_kind::SS || k == equilibrium_kind::SF) ? action::stop : action::forgo;
}

constexpr action action_of_player2(equilibrium_kind k) {
  return (k == equilibrium_kind::SS || k == equilibrium_kind::FS) ? action::stop : action::forgo;
}

// Player I's margin: n/N (1 - sum_{j=n+1}^{N} 1/(j-1)).
inline double w1(int n, const problem_config& cfg) {
  if (n < 1 || n > cfg.horizon) throw domain_error("w1: index out of range");
  return static_cast<double>(n) / cfg.horizon * (1.0 - harmonic_tail(n, cfg.horizon));
}

// Player II's margin at a record, x^(N-n) - x^(N-n) sum_j (x^(j-N-1) - 1)/(N-j+1).
// Evaluated with the x^(N-n) factor distributed into the sum, which keeps it
// finite (and continuous) down to x = 0.
inline double w2(const record_state& s, const problem_config& cfg) {
  check_state(s, cfg);
  const int n = s.index, big_n = cfg.horizon;
  const double x = s.value;
  const double top = numerics::ipow(x, big_n - n);
  double sum = 0.0;
  for (int j = n + 1; j <= big_n; ++j) sum += (numerics::ipow(x, j - n - 1) - top) / (big_n - j + 1);
  return top - sum;
}

struct payoff_cell {
  double player1 = 0.0;
  double player2 = 0.0;
};

// Stage game at a record, indexed [action of I][action of II].
struct bimatrix {
  std::array<std::array<payoff_cell, 2>, 2> cells{};

  const payoff_cell& at(action a1, action a2) const {
    return cells[static_cast<int>(a1)][static_cast<int>(a2)];
  }
};

// Neither player gains by a unilateral switch away from the profile `kind`.
inline bool is_pure_nash(const bimatrix& m, equilibrium_kind kind) {
  const action a1 = action_of_player1(kind), a2 = action_of_player2(kind);
  const action o1 = a1 == action::stop ? action::forgo : action::stop;
  const action o2 = a2 == action::stop ? action::forgo : action::stop;
  return m.at(a1, a2).player1 >= m.at(o1, a2).player1 && m.at(a1, a2).player2 >= m.at(a1, o2).player2;
}

struct game_tables {
  problem_config config;
  threshold_vector xthresholds;
  int nstar = 0;
  int ntilde = 0;
  std::vector<double> w1;   // w1[n-1]
  std::vector<double> tv1;  // tv1[n-1]

  int horizon() const { return config.horizon; }
  double x(int n) const { return xthresholds.at(n); }
  double w1_at(int n) const { return w1.at(n - 1); }
  double tv1_at(int n) const { return tv1.at(n - 1); }
};

// Player I's expected margin after forgoing at (n, x) while II also forgoes,
// assuming the game resolves at the next record: below x_k II passes and I
// takes it (w1_k), above x_k both claim it ((2p-1) w1_k).
inline double tv1_given_x(int n, double x, const game_tables& t) {
  const int big_n = t.horizon();
  const double p = t.config.priority;
  double sum = 0.0, power = 1.0;
  for (int k = n + 1; k <= big_n; ++k) {
    const double cut = std::max(x, t.x(k));
    const double w = t.w1_at(k);
    sum += power * ((cut - x) * w + (1.0 - cut) * (2.0 * p - 1.0) * w);
    power *= x;
  }
  return sum;
}

// tv1_given_x averaged over x uniform on [0, x_n], the values at which II passes.
inline double tv1(int n, const game_tables& t, const numerics::tolerance& tol = {}) {
  const double top = t.x(n);
  if (n >= t.horizon() || top <= 0.0) return 0.0;
  std::vector<double> cuts;
  for (int k = n + 1; k <= t.horizon(); ++k) cuts.push_back(t.x(k));
  const double integral =
      numerics::integrate_piecewise([&](double x) { return tv1_given_x(n, x, t); }, 0.0, top, cuts, tol);
  return integral / top;
}

// First n >= n* with tv1(n) <= w1(n); n = N always qualifies.
inline int shifted_cutoff(const game_tables& t) {
  for (int n = t.nstar; n <= t.horizon(); ++n)
    if (t.tv1_at(n) <= t.w1_at(n)) return n;
  return t.horizon();
}

inline game_tables build_game_tables(const problem_config& cfg, const numerics::tolerance& tol = {}) {
  cfg.validate();
  game_tables t;
  t.config = cfg;
  t.xthresholds = fullinfo_thresholds(cfg, tol);
  t.nstar = secretary_cutoff(cfg);
  t.w1.resize(cfg.horizon);
  for (int n = 1; n <= cfg.horizon; ++n) t.w1[n - 1] = w1(n, cfg);
  t.tv1.resize(cfg.horizon);
  for (int n = 1; n <= cfg.horizon; ++n) t.tv1[n - 1] = tv1(n, t, tol);
  t.ntilde = shifted_cutoff(t);
  return t;
}

// Player II's indifference to switching from stop to forgo at a record
// (n < n*, x > x_n) with Player I passing.
inline bool fs_condition(int n, double x, const problem_config& cfg) {
  if (!(x > 0.0 && x < 1.0)) throw domain_error("fs_condition: x must lie in (0, 1)");
  if (n < 1 || n > cfg.horizon) throw domain_error("fs_condition: index out of range");
  const double p = cfg.priority;
  const int remaining = cfg.horizon - n;
  const double inv = 1.0 / x;
  double lhs = 0.0, rhs = 0.0;
  for (int k = 1; k <= remaining; ++k) {
    const double inv_k = numerics::ipow(inv, k);
    lhs += (inv_k - 1.0) / k;
    for (int j = 1; j < k; ++j)
      rhs += static_cast<double>(j) / k * inv_k - numerics::ipow(inv, j) / (k - j) + 1.0 / k;
  }
  return 2.0 * p * lhs >= -(1.0 - 2.0 * p) * rhs;
}

inline equilibrium_kind classify_state(int n, double x, const game_tables& t) {
  if (t.config.priority > 0.5)
    throw unsupported_priority("classify_state: equilibrium rules require priority <= 0.5");
  if (!(x >= 0.0 && x <= 1.0)) throw domain_error("classify_state: x outside [0, 1]");
  if (n < 1 || n > t.horizon()) throw domain_error("classify_state: index out of range");
  const bool above = x >= t.x(n);
  if (n >= t.nstar) {
    if (above) return equilibrium_kind::SS;
    return n >= t.ntilde ? equilibrium_kind::SF : equilibrium_kind::FF;
  }
  return above ? equilibrium_kind::FS : equilibrium_kind::FF;
}

// Stage game at (n, x). The FF cell is the continuation pair, which is not
// local to the state and has to be supplied by the caller.
inline bimatrix make_bimatrix(int n, double x, const game_tables& t, payoff_cell forgo_both) {
  const double p = t.config.priority;
  const double a = t.w1_at(n);
  const double b = w2({n, x}, t.config);
  bimatrix m;
  m.cells[0][0] = {(2.0 * p - 1.0) * a, (1.0 - 2.0 * p) * b};
  m.cells[0][1] = {a, -b};
  m.cells[1][0] = {-a, b};
  m.cells[1][1] = forgo_both;
  return m;
}

struct region_grid {
  int horizon = 0;
  std::vector<double> xs;
  std::vector<equilibrium_kind> kinds;  // row-major: n outer, x inner

  equilibrium_kind at(int n, std::size_t j) const { return kinds.at((n - 1) * xs.size() + j); }
};

// Classification over all n and the mesh {0, h, 2h, ...} of [0, 1].
inline region_grid region_map(const game_tables& t, double step) {
  if (!(step > 0.0 && step <= 0.1)) throw domain_error("region_map: step must lie in (0, 0.1]");
  region_grid g;
  g.horizon = t.horizon();
  const auto count = static_cast<std::size_t>(std::floor(1.0 / step + 1e-9));
  for (std::size_t j = 0; j <= count; ++j) g.xs.push_back(std::min(1.0, j * step));
  g.kinds.reserve(g.xs.size() * g.horizon);
  for (int n = 1; n <= g.horizon; ++n)
    for (double x : g.xs) g.kinds.push_back(classify_state(n, x, t));
  return g;
}

}  // namespace bestchoice

#endif
