#ifndef BESTCHOICE_MODELS_HPP
#define BESTCHOICE_MODELS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "bestchoice/errors.hpp"
#include "bestchoice/numerics.hpp"

// Single-agent baselines: the no-information (relative rank) secretary
// problem and the full-information problem on uniform [0,1] values.
namespace bestchoice {

// Horizon N and priority p, the probability that an object claimed by both
// players at once is assigned to Player I (the rank observer).
struct problem_config {
  int horizon = 10;
  double priority = 0.5;

  void validate() const {
    if (horizon < 2) throw domain_error("problem_config: horizon must be at least 2");
    if (!(priority >= 0.0 && priority <= 1.0))
      throw domain_error("problem_config: priority must lie in [0, 1]");
  }
};

inline problem_config make_config(int horizon, double priority) {
  problem_config cfg{horizon, priority};
  cfg.validate();
  return cfg;
}

// A record (relative rank 1) at position `index` with value `value`.
// Index N+1 denotes absorption; its value is ignored.
struct record_state {
  int index = 1;
  double value = 0.0;
};

inline void check_state(const record_state& s, const problem_config& cfg) {
  if (s.index < 1 || s.index > cfg.horizon) throw domain_error("record_state: index out of range");
  if (!(s.value >= 0.0 && s.value <= 1.0)) throw domain_error("record_state: value outside [0, 1]");
}

// Density factor of the record chain: the next record falls at m with value
// in dy (y > x) with probability x^(m-n-1) dy.
inline double record_transition_density(const record_state& from, int to_index) {
  if (to_index <= from.index) return 0.0;
  return numerics::ipow(from.value, to_index - from.index - 1);
}

// P(next candidate at m | candidate at n) for the relative-rank chain.
inline double rank_transition(int n, int m) {
  if (n < 1) throw domain_error("rank_transition: n must be at least 1");
  if (m <= n) return 0.0;
  return static_cast<double>(n) / (static_cast<double>(m) * (m - 1));
}

// sum_{k=n+1}^{N} 1/(k-1)
inline double harmonic_tail(int n, int horizon) {
  double s = 0.0;
  for (int k = horizon; k > n; --k) s += 1.0 / (k - 1);
  return s;
}

inline double secretary_stop_reward(int n, const problem_config& cfg) {
  return static_cast<double>(n) / cfg.horizon;
}

inline double secretary_continue_reward(int n, const problem_config& cfg) {
  return static_cast<double>(n) / cfg.horizon * harmonic_tail(n, cfg.horizon);
}

// First index at which stopping on a candidate is optimal when playing alone.
inline int secretary_cutoff(const problem_config& cfg) {
  double tail = 0.0;  // harmonic_tail(n) built from n = N downwards
  int cutoff = cfg.horizon;
  for (int n = cfg.horizon; n >= 1; --n) {
    if (n < cfg.horizon) tail += 1.0 / n;
    if (tail <= 1.0) cutoff = n;
    else break;
  }
  return cutoff;
}

inline double fullinfo_stop_reward(const record_state& s, const problem_config& cfg) {
  return numerics::ipow(s.value, cfg.horizon - s.index);
}

// Probability of eventually stopping on the overall maximum when passing the
// record (n, x) and then stopping at the very next record.
inline double fullinfo_continue_reward(const record_state& s, const problem_config& cfg) {
  const int n = s.index, big_n = cfg.horizon;
  const double x = s.value;
  double sum = 0.0;
  for (int k = n + 1; k <= big_n; ++k) {
    const int remaining = big_n - k + 1;
    sum += numerics::ipow(x, k - n - 1) * (1.0 - numerics::ipow(x, remaining)) / remaining;
  }
  return sum;
}

// sum_{k=1}^{d} (x^-k - 1)/k - 1; decreasing in x on (0, 1].
inline double fullinfo_indifference(double x, int remaining) {
  const double inv = 1.0 / x;
  double power = 1.0, sum = 0.0;
  for (int k = 1; k <= remaining; ++k) {
    power *= inv;
    sum += (power - 1.0) / k;
  }
  return sum - 1.0;
}

// Indifference value x_d with d = N - n observations still to come.
inline double fullinfo_threshold(int remaining, const numerics::tolerance& tol = {}) {
  if (remaining < 0) throw domain_error("fullinfo_threshold: remaining must be non-negative");
  if (remaining == 0) return 0.0;
  // x_1 = 1/2 and x_d increases with d, so [1/2, 1] always brackets.
  return numerics::bisect_root([remaining](double x) { return fullinfo_indifference(x, remaining); },
                               0.5, 1.0, tol);
}

class threshold_vector {
 public:
  threshold_vector() = default;
  explicit threshold_vector(std::vector<double> by_index) : values_(std::move(by_index)) {}

  int horizon() const { return static_cast<int>(values_.size()); }
  // 1-based: at(n) is x_n.
  double at(int n) const {
    if (n < 1 || n > horizon()) throw domain_error("threshold_vector: index out of range");
    return values_[n - 1];
  }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

inline threshold_vector fullinfo_thresholds(int horizon, const numerics::tolerance& tol = {}) {
  if (horizon < 1) throw domain_error("fullinfo_thresholds: horizon must be at least 1");
  std::vector<double> xs(horizon);
  for (int n = 1; n <= horizon; ++n) xs[n - 1] = fullinfo_threshold(horizon - n, tol);
  return threshold_vector(std::move(xs));
}

inline threshold_vector fullinfo_thresholds(const problem_config& cfg, const numerics::tolerance& tol = {}) {
  cfg.validate();
  return fullinfo_thresholds(cfg.horizon, tol);
}

}  // namespace bestchoice

#endif
