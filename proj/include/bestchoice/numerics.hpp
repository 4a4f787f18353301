#ifndef BESTCHOICE_NUMERICS_HPP
#define BESTCHOICE_NUMERICS_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bestchoice/errors.hpp"

namespace bestchoice::numerics {

struct tolerance {
  double abs_tol = 1e-12;
  int max_iter = 200;

  void validate() const {
    if (!(abs_tol > 0.0)) throw domain_error("tolerance: abs_tol must be positive");
    if (max_iter < 1) throw domain_error("tolerance: max_iter must be at least 1");
  }
};

// Bisection on a sign change. Stops once the bracket is no wider than
// abs_tol (or cannot shrink further in double precision) and returns the
// midpoint. An exact zero at either end is returned as-is.
template <typename F>
double bisect_root(F&& f, double lo, double hi, const tolerance& tol = {}) {
  tol.validate();
  if (!(lo < hi)) throw invalid_interval("bisect_root: requires lo < hi");
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi))
    throw no_bracket("bisect_root: f(lo) and f(hi) have the same sign");

  for (int it = 0; it < tol.max_iter; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (hi - lo <= tol.abs_tol || mid <= lo || mid >= hi) return std::clamp(mid, lo, hi);
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if (std::signbit(fmid) == std::signbit(flo)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  throw no_convergence("bisect_root: max_iter exceeded");
}

// Gauss-Legendre rule on [-1, 1], nodes ascending. `bary` holds the
// barycentric interpolation weights for the same nodes, so a table of
// values at the nodes doubles as an exact interpolant of degree order-1.
struct legendre_rule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> bary;

  int order() const { return static_cast<int>(nodes.size()); }

  explicit legendre_rule(int order) {
    if (order < 1) throw domain_error("legendre_rule: order must be at least 1");
    nodes.resize(order);
    weights.resize(order);
    // P_n(t) and P_n'(t) by the three-term recurrence.
    auto legendre = [order](double t) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= order; ++k) {
        const double pk = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      return std::pair{p1, order * (t * p1 - p0) / (t * t - 1.0)};
    };
    for (int i = 0; i < order; ++i) {
      double t = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
      for (int it = 0; it < 100; ++it) {
        const auto [p, dp] = legendre(t);
        const double step = p / dp;
        t -= step;
        if (std::abs(step) < 1e-16) break;
      }
      const double dp = legendre(t).second;
      nodes[order - 1 - i] = t;
      weights[order - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    bary.assign(order, 1.0);
    for (int j = 0; j < order; ++j) {
      for (int k = 0; k < order; ++k)
        if (k != j) bary[j] /= (nodes[j] - nodes[k]);
    }
    const double scale = *std::max_element(bary.begin(), bary.end(),
                                           [](double a, double b) { return std::abs(a) < std::abs(b); });
    for (double& b : bary) b /= std::abs(scale);
  }

  // Interpolate values given at the nodes, evaluated at t in reference coordinates.
  double interpolate(std::span<const double> values, double t) const {
    double num = 0.0, den = 0.0;
    for (int j = 0; j < order(); ++j) {
      const double d = t - nodes[j];
      if (d == 0.0) return values[j];
      const double c = bary[j] / d;
      num += c * values[j];
      den += c;
    }
    return num / den;
  }
};

namespace detail {

inline const legendre_rule& default_rule() {
  static const legendre_rule rule(16);
  return rule;
}

template <typename F>
double fixed_rule(F& f, double a, double b, const legendre_rule& rule) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < rule.order(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

template <typename F>
double adaptive(F& f, double a, double b, double whole, double abs_tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = fixed_rule(f, a, m, default_rule());
  const double right = fixed_rule(f, m, b, default_rule());
  const double refined = left + right;
  if (depth <= 0 || std::abs(refined - whole) <= abs_tol) return refined;
  return adaptive(f, a, m, left, 0.5 * abs_tol, depth - 1) +
         adaptive(f, m, b, right, 0.5 * abs_tol, depth - 1);
}

}  // namespace detail

// Composite 16-point Gauss-Legendre with bisection of the interval until
// successive estimates agree to abs_tol. Exact for polynomials of degree <= 31.
template <typename F>
double integrate(F&& f, double a, double b, const tolerance& tol = {}) {
  tol.validate();
  if (a > b) throw invalid_interval("integrate: requires a <= b");
  if (a == b) return 0.0;
  const double whole = detail::fixed_rule(f, a, b, detail::default_rule());
  return detail::adaptive(f, a, b, whole, tol.abs_tol, std::min(tol.max_iter, 40));
}

// Integrate over [a, b] splitting at every breakpoint inside (a, b).
template <typename F>
double integrate_piecewise(F&& f, double a, double b, std::span<const double> breakpoints,
                           const tolerance& tol = {}) {
  if (a > b) throw invalid_interval("integrate_piecewise: requires a <= b");
  std::vector<double> cuts{a};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += integrate(f, cuts[i], cuts[i + 1], tol);
  return total;
}

// x^k for integer k >= 0, with 0^0 = 1.
inline double ipow(double x, int k) {
  double r = 1.0;
  double base = x;
  unsigned e = static_cast<unsigned>(k);
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

}  // namespace bestchoice::numerics

#endif
