#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "radsum/rational.hpp"
#include "radsum/weights.hpp"

namespace radsum {

inline constexpr int kMaxEnumerate = 26;  // full PMF, 2^n atoms worst case
inline constexpr int kMaxMitm = 52;       // meet-in-the-middle counting

// Exact count out of 2^n sign vectors.
struct Prob {
  std::uint64_t count = 0;
  int n = 0;

  double value() const { return std::ldexp(static_cast<double>(count), -n); }
  Rational exact() const { return Rational(BigInt(count), BigInt(1) << n); }
};

template <class T>
struct Atom {
  T value;
  std::uint64_t count;
};

template <class T>
struct Distribution {
  std::vector<Atom<T>> atoms;  // sorted by value, counts sum to 2^n
  int n = 0;

  std::uint64_t total() const { return std::uint64_t{1} << n; }
};

namespace detail {

// PMF of sum_i a_i vals[i] as sorted (value, count) pairs.  Values are built by
// left-to-right folding, so in floating point the result matches a direct
// enumeration with the same summation order.
template <class Num>
std::vector<std::pair<Num, std::uint64_t>> convolve_signs(std::span<const Num> vals) {
  std::vector<std::pair<Num, std::uint64_t>> cur{{Num{}, 1}};
  std::vector<std::pair<Num, std::uint64_t>> next;
  for (const Num& v : vals) {
    next.clear();
    next.reserve(cur.size() * 2);
    // merge {a - v} and {a + v}, both sorted
    std::size_t i = 0, j = 0;
    auto minus = [&](std::size_t k) { return Num(cur[k].first - v); };
    auto plus = [&](std::size_t k) { return Num(cur[k].first + v); };
    auto push = [&](Num val, std::uint64_t c) {
      if (!next.empty() && next.back().first == val)
        next.back().second += c;
      else
        next.emplace_back(std::move(val), c);
    };
    while (i < cur.size() && j < cur.size()) {
      Num a = minus(i), b = plus(j);
      if (a < b)
        push(std::move(a), cur[i++].second);
      else if (b < a)
        push(std::move(b), cur[j++].second);
      else {
        push(std::move(a), cur[i].second + cur[j].second);
        ++i, ++j;
      }
    }
    while (i < cur.size()) push(minus(i), cur[i].second), ++i;
    while (j < cur.size()) push(plus(j), cur[j].second), ++j;
    cur.swap(next);
  }
  return cur;
}

// Count sign vectors with lo <= sum <= hi (strictness per flag) by splitting the
// weights in half and scanning one sorted half against the other.
template <class Num>
std::uint64_t mitm_count(std::span<const Num> vals, const Num& lo, const Num& hi,
                         bool strict_lo, bool strict_hi) {
  const std::size_t n = vals.size();
  const std::size_t h = (n + 1) / 2;  // first ceil(n/2) weights vs the rest
  auto first = vals.subspan(0, h);
  auto second = vals.subspan(h);

  std::vector<std::pair<Num, std::uint64_t>> a, b;
  if (n >= 28) {
    auto fut = std::async(std::launch::async, [&] { return convolve_signs<Num>(first); });
    b = convolve_signs<Num>(second);
    a = fut.get();
  } else {
    a = convolve_signs<Num>(first);
    b = convolve_signs<Num>(second);
  }

  std::vector<std::uint64_t> cum(b.size() + 1, 0);
  for (std::size_t i = 0; i < b.size(); ++i) cum[i + 1] = cum[i] + b[i].second;

  auto cmp = [](const std::pair<Num, std::uint64_t>& p, const Num& v) { return p.first < v; };
  std::uint64_t total = 0;
  for (const auto& [av, ac] : a) {
    Num l = Num(lo - av), r = Num(hi - av);
    // index of first b-atom inside the window
    std::size_t il =
        strict_lo
            ? std::upper_bound(b.begin(), b.end(), l,
                               [](const Num& v, const auto& p) { return v < p.first; }) -
                  b.begin()
            : std::lower_bound(b.begin(), b.end(), l, cmp) - b.begin();
    // index one past the last b-atom inside the window
    std::size_t ir =
        strict_hi
            ? std::lower_bound(b.begin(), b.end(), r, cmp) - b.begin()
            : std::upper_bound(b.begin(), b.end(), r,
                               [](const Num& v, const auto& p) { return v < p.first; }) -
                  b.begin();
    if (ir > il) total += ac * (cum[ir] - cum[il]);
  }
  return total;
}

inline bool fits_int64(const BigInt& x) {
  static const BigInt lim = (BigInt(1) << 62);
  return x > -lim && x < lim;
}

// Rational instance scaled to a shared integer grid, with the count window
// [lo, hi] converted to a closed integer window.
struct IntWindow {
  std::vector<BigInt> vals;
  BigInt lo, hi;
  bool empty = false;
};

inline IntWindow integer_window(const std::vector<Rational>& vals, const Rational& lo,
                                const Rational& hi, bool strict_lo, bool strict_hi) {
  IntWindow w;
  BigInt scale = 1;
  for (const Rational& v : vals) scale = lcm(scale, BigInt(denominator(v)));
  scale = lcm(scale, BigInt(denominator(lo)));
  scale = lcm(scale, BigInt(denominator(hi)));
  w.vals.reserve(vals.size());
  BigInt span = 0;
  for (const Rational& v : vals) {
    w.vals.push_back(BigInt(numerator(v)) * (scale / BigInt(denominator(v))));
    span += abs(w.vals.back());
  }
  Rational lo_s = lo * scale, hi_s = hi * scale;
  w.lo = strict_lo ? floor_rational(lo_s) + 1 : ceil_rational(lo_s);
  w.hi = strict_hi ? ceil_rational(hi_s) - 1 : floor_rational(hi_s);
  if (w.lo > w.hi) {
    w.empty = true;
    return w;
  }
  // clamp to the reachable range so the int64 fast path stays in bounds
  if (w.lo < -span) w.lo = -span;
  if (w.hi > span) w.hi = span;
  if (w.lo > w.hi) w.empty = true;
  return w;
}

inline std::uint64_t count_scaled(const IntWindow& w) {
  if (w.empty) return 0;
  BigInt span = 0;
  for (const BigInt& v : w.vals) span += abs(v);
  if (fits_int64(span)) {
    std::vector<std::int64_t> v64;
    v64.reserve(w.vals.size());
    for (const BigInt& v : w.vals) v64.push_back(v.template convert_to<std::int64_t>());
    return mitm_count<std::int64_t>(v64, w.lo.template convert_to<std::int64_t>(),
                                    w.hi.template convert_to<std::int64_t>(), false, false);
  }
  return mitm_count<BigInt>(w.vals, w.lo, w.hi, false, false);
}

}  // namespace detail

// Pr[lo <= S <= hi] as an exact count over 2^n sign vectors.  Exact value
// comparisons in rational mode; raw IEEE comparisons in float mode.
inline Prob count_in_range(const Weights<Rational>& w, const Rational& lo, const Rational& hi,
                           bool strict_lo = false, bool strict_hi = false) {
  if (w.n() > kMaxMitm) throw std::length_error("weight vector too long for counting (n > 52)");
  auto win = detail::integer_window(w.values, lo, hi, strict_lo, strict_hi);
  return Prob{detail::count_scaled(win), w.n()};
}

inline Prob count_in_range(const Weights<double>& w, double lo, double hi,
                           bool strict_lo = false, bool strict_hi = false) {
  if (w.n() > kMaxMitm) throw std::length_error("weight vector too long for counting (n > 52)");
  return Prob{detail::mitm_count<double>(w.values, lo, hi, strict_lo, strict_hi), w.n()};
}

// Pr[|S| <= threshold] (or strict <).
template <class T>
Prob prob_abs_le(const Weights<T>& w, const T& threshold, bool strict = false) {
  if (threshold < T{}) throw std::invalid_argument("threshold must be nonnegative");
  return count_in_range(w, T(-threshold), threshold, strict, strict);
}

// Pr[|x + Y| <= threshold] with Y the signed sum of w.
template <class T>
Prob shifted_prob(const T& x, const Weights<T>& w, const T& threshold) {
  return count_in_range(w, T(-threshold - x), T(threshold - x), false, false);
}

// Full PMF of S.  Equivalent to enumerating all 2^n sign vectors.
template <class T>
Distribution<T> exact_distribution(const Weights<T>& w) {
  if (w.n() > kMaxEnumerate)
    throw std::length_error("weight vector too long for full enumeration (n > 26)");
  Distribution<T> d;
  d.n = w.n();
  if constexpr (std::is_same_v<T, Rational>) {
    auto scaled = scale_to_integers(w.values);
    auto atoms = detail::convolve_signs<BigInt>(scaled.values);
    d.atoms.reserve(atoms.size());
    for (auto& [v, c] : atoms) d.atoms.push_back({Rational(v, scaled.scale), c});
  } else {
    auto atoms = detail::convolve_signs<T>(w.values);
    d.atoms.reserve(atoms.size());
    for (auto& [v, c] : atoms) d.atoms.push_back({v, c});
  }
  return d;
}

// Counting oracle straight off the PMF; the independent cross-check for the
// meet-in-the-middle path.
template <class T>
Prob prob_from_distribution(const Distribution<T>& d, const T& threshold, bool strict = false) {
  std::uint64_t c = 0;
  for (const auto& a : d.atoms) {
    T m = num_abs(a.value);
    if (strict ? m < threshold : !(threshold < m)) c += a.count;
  }
  return Prob{c, d.n};
}

}  // namespace radsum
