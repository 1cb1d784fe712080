#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "radsum/distribution.hpp"
#include "radsum/rational.hpp"
#include "radsum/weights.hpp"

namespace radsum {

struct SearchResult {
  std::vector<double> best_weights;
  std::vector<Rational> best_weights_exact;  // pattern search: snapped rationals
  double best_prob = 1;
  std::uint64_t evaluations = 0;
  std::string method;
  std::uint64_t seed = 0;
};

using SearchTrace = std::function<void(std::uint64_t eval_index, double prob)>;

namespace detail {

// Float-mode objective.  The threshold is nudged up by 1e-12 so that atoms
// sitting exactly on |S| = 1 in real arithmetic are never dropped to rounding;
// this can only overcount, never undercount.
inline constexpr double kBoundaryGuard = 1.0 + 1e-12;

inline double search_objective(const std::vector<double>& w, std::uint64_t& evals,
                               const SearchTrace& trace) {
  double p = Prob{mitm_count<double>(w, -kBoundaryGuard, kBoundaryGuard, false, false),
                  static_cast<int>(w.size())}
                 .value();
  ++evals;
  if (trace) trace(evals, p);
  return p;
}

}  // namespace detail

// Exhaustive sweep over squared weights on the simplex grid {k/resolution},
// sum = resolution, nonincreasing (symmetry dedup).
inline SearchResult grid_search(int n, int resolution, const SearchTrace& trace = {}) {
  if (n < 1 || n > 9) throw std::length_error("grid_search supports 1 <= n <= 9");
  if (resolution < 1 || resolution > 64) throw std::length_error("grid resolution capped at 64");
  SearchResult res;
  res.method = "grid";
  std::vector<int> ks(n);
  std::vector<double> w(n);

  auto evaluate = [&] {
    for (int i = 0; i < n; ++i) w[i] = std::sqrt(static_cast<double>(ks[i]) / resolution);
    double p = detail::search_objective(w, res.evaluations, trace);
    if (p < res.best_prob) {
      res.best_prob = p;
      res.best_weights = w;
    }
  };

  // nonincreasing compositions of `resolution` into n parts
  std::function<void(int, int, int)> rec = [&](int pos, int remaining, int cap) {
    if (pos == n - 1) {
      if (remaining <= cap) {
        ks[pos] = remaining;
        evaluate();
      }
      return;
    }
    int slots = n - pos;
    int lo = (remaining + slots - 1) / slots;  // nonincreasing feasibility
    for (int k = std::min(cap, remaining); k >= lo; --k) {
      ks[pos] = k;
      rec(pos + 1, remaining - k, k);
    }
  };
  rec(0, resolution, resolution);
  return res;
}

namespace detail {

// One pattern-search descent on the squared-weight simplex; mutates `squares`.
inline double pattern_descent(std::vector<double>& squares, std::uint64_t& evals,
                              const SearchTrace& trace) {
  const int n = static_cast<int>(squares.size());
  auto to_w = [&] {
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = std::sqrt(squares[i]);
    return w;
  };
  auto w = to_w();
  double best = search_objective(w, evals, trace);
  double step = 0.25;
  const double step_min = std::ldexp(1.0, -20);
  while (step >= step_min) {
    bool improved = false;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j || squares[j] < step) continue;
        squares[i] += step;
        squares[j] -= step;
        w = to_w();
        double p = search_objective(w, evals, trace);
        if (p < best) {  // strict improvement only
          best = p;
          improved = true;
        } else {
          squares[i] -= step;
          squares[j] += step;
        }
      }
    }
    if (!improved) step /= 2;
  }
  return best;
}

}  // namespace detail

// Snap float weights to denominator-10^6 rationals inside the unit ball.
inline Weights<Rational> snap_to_rational(const std::vector<double>& w, long den = 1000000) {
  std::vector<Rational> v;
  v.reserve(w.size());
  for (double x : w) v.emplace_back(std::lround(std::abs(x) * den), den);
  Weights<Rational> out(std::move(v));
  while (out.norm_sq > 1) {
    // shave the largest weight until we are back inside the ball
    std::size_t im = 0;
    for (std::size_t i = 1; i < out.values.size(); ++i)
      if (out.values[im] < out.values[i]) im = i;
    out.values[im] -= Rational(1, den);
    out = Weights<Rational>(std::move(out.values));
  }
  return out;
}

// Derivative-free minimization of Pr[|S| <= 1].  Restart 0 starts from equal
// weights, the rest from seeded random simplex points.  The winner is snapped
// to small-denominator rationals and re-evaluated exactly; best_prob is that
// exact value.
inline SearchResult pattern_search(int n, int restarts, std::uint64_t seed,
                                   const SearchTrace& trace = {}) {
  if (n < 1 || n > 24) throw std::length_error("pattern_search supports 1 <= n <= 24");
  if (restarts < 1) throw std::invalid_argument("need at least one restart");
  SearchResult res;
  res.method = "pattern";
  res.seed = seed;
  double best_float = 2;
  std::vector<double> best_squares;
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> squares(n, 1.0 / n);
    if (r > 0) {
      std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + r);
      std::exponential_distribution<double> ed(1.0);
      double s = 0;
      for (auto& q : squares) s += (q = ed(rng));
      for (auto& q : squares) q /= s;
    }
    double p = detail::pattern_descent(squares, res.evaluations, trace);
    if (p < best_float) {
      best_float = p;
      best_squares = squares;
    }
  }
  std::vector<double> wf(n);
  for (int i = 0; i < n; ++i) wf[i] = std::sqrt(best_squares[i]);
  Weights<Rational> snapped = snap_to_rational(wf);
  Prob exact = prob_abs_le(snapped, Rational(1));
  res.best_weights_exact = snapped.values;
  res.best_weights.clear();
  for (const Rational& v : snapped.values) res.best_weights.push_back(to_double(v));
  res.best_prob = exact.value();
  return res;
}

// Equal-weights family v_i = 1/sqrt(n), via float meet-in-the-middle.  For
// perfect-square n the PMF has atoms exactly on |S| = 1; the boundary guard
// keeps them counted.
inline double equal_weights_prob(int n) {
  if (n < 1 || n > 40) throw std::length_error("equal-weights sweep supports 1 <= n <= 40");
  std::vector<double> w(n, 1.0 / std::sqrt(static_cast<double>(n)));
  return Prob{detail::mitm_count<double>(w, -detail::kBoundaryGuard, detail::kBoundaryGuard,
                                         false, false),
              n}
      .value();
}

}  // namespace radsum
