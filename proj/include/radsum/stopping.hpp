#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "radsum/distribution.hpp"
#include "radsum/rational.hpp"
#include "radsum/weights.hpp"

namespace radsum {

template <class T>
using ProbOf = std::conditional_t<std::is_same_v<T, Rational>, Rational, double>;

// Smallest t with t = n-1 or M_t > 1 - v_{t+1}, where M_t is the prefix sum.
// Defined only on canonicalized ("oddball"-ordered) weights.
template <class T>
int compute_K(const Weights<T>& w) {
  if (!is_canonical(w)) throw std::invalid_argument("compute_K requires canonicalized weights");
  const int n = w.n();
  T m{};
  for (int t = 0; t < n - 1; ++t) {
    if (T(1) - w.values[t] < m) return t;
    m += w.values[t];
  }
  return n - 1;
}

// Stopping time: smallest t with t = n-1 or |X_t| > 1 - v_{t+1}.  Returns
// (T, X_T).
template <class T>
std::pair<int, T> stopping_time(const Weights<T>& w, const std::vector<int>& signs) {
  if (!is_canonical(w)) throw std::invalid_argument("stopping_time requires canonicalized weights");
  if (static_cast<int>(signs.size()) != w.n())
    throw std::invalid_argument("sign vector length does not match weight count");
  const int n = w.n();
  T x{};
  for (int t = 0; t < n - 1; ++t) {
    if (T(1) - w.values[t] < num_abs(x)) return {t, x};
    x += signs[t] < 0 ? T(-w.values[t]) : w.values[t];
  }
  return {n - 1, x};
}

// Case labels from the five-way analysis behind the two-piece bound.  The
// boundary 2T = 3K+2 resolves to case 3 (both pieces coincide there).
inline int case_of(int T, int K, int n) {
  if (T < K) throw std::invalid_argument("T < K is inconsistent");
  if (T > n - 1) throw std::invalid_argument("T > n - 1 is inconsistent");
  if (T == n - 1) return 1;
  if (T == n - 2) return 2;
  if (T == K) return 5;
  return 2 * T <= 3 * K + 2 ? 3 : 4;
}

template <class T>
struct StoppingProfile {
  using P = ProbOf<T>;
  int K = 0;
  int n = 0;
  std::map<int, P> t_distribution;
  std::map<int, P> conditional_success;
  P overall{};
  // T = K or T >= K+2, with Pr[T=K] = 2^{1-K}; guaranteed when K <= n-4
  bool dichotomy_holds = false;
};

namespace detail {

struct LevelCounts {
  std::uint64_t stopped = 0;  // sign prefixes stopping at this level
  std::uint64_t success = 0;  // suffix completions of those with |S| <= 1
};

// Sorted half-sum tables for one suffix; answers closed-range count queries.
template <class Num>
struct SuffixTable {
  std::vector<std::pair<Num, std::uint64_t>> a, b;
  std::vector<std::uint64_t> cum;

  explicit SuffixTable(std::span<const Num> vals) {
    const std::size_t h = (vals.size() + 1) / 2;
    a = convolve_signs<Num>(vals.subspan(0, h));
    b = convolve_signs<Num>(vals.subspan(h));
    cum.assign(b.size() + 1, 0);
    for (std::size_t i = 0; i < b.size(); ++i) cum[i + 1] = cum[i] + b[i].second;
  }

  std::uint64_t count(const Num& lo, const Num& hi) const {
    auto cmp = [](const std::pair<Num, std::uint64_t>& p, const Num& v) { return p.first < v; };
    auto rcmp = [](const Num& v, const std::pair<Num, std::uint64_t>& p) { return v < p.first; };
    std::uint64_t total = 0;
    for (const auto& [av, ac] : a) {
      Num l = Num(lo - av), r = Num(hi - av);
      std::size_t il = std::lower_bound(b.begin(), b.end(), l, cmp) - b.begin();
      std::size_t ir = std::upper_bound(b.begin(), b.end(), r, rcmp) - b.begin();
      if (ir > il) total += ac * (cum[ir] - cum[il]);
    }
    return total;
  }
};

// Level-by-level walk over sign prefixes, merging equal partial sums.  A prefix
// stops at level t when t = n-1 or |X_t| > one - vals[t]; its 2^{n-t} suffix
// completions are counted through a per-level meet-in-the-middle table.
template <class Num>
std::map<int, LevelCounts> profile_counts(const std::vector<Num>& vals, const Num& one) {
  const int n = static_cast<int>(vals.size());
  std::map<int, LevelCounts> out;
  std::vector<std::pair<Num, std::uint64_t>> alive{{Num{}, 1}}, next;
  for (int t = 0; t < n && !alive.empty(); ++t) {
    const bool forced = (t == n - 1);
    SuffixTable<Num>* table = nullptr;
    std::optional<SuffixTable<Num>> storage;
    next.clear();
    for (auto& [x, c] : alive) {
      Num ax = x < Num{} ? Num(-x) : x;
      if (forced || Num(one - vals[t]) < ax) {
        if (!storage) {
          storage.emplace(std::span<const Num>(vals).subspan(t));
          table = &*storage;
        }
        auto& lc = out[t];
        lc.stopped += c;
        lc.success += c * table->count(Num(-one - x), Num(one - x));
      } else {
        next.emplace_back(Num(x - vals[t]), c);
        next.emplace_back(Num(x + vals[t]), c);
      }
    }
    std::sort(next.begin(), next.end());
    // merge equal partial sums
    std::vector<std::pair<Num, std::uint64_t>> merged;
    merged.reserve(next.size());
    for (auto& p : next) {
      if (!merged.empty() && merged.back().first == p.first)
        merged.back().second += p.second;
      else
        merged.push_back(std::move(p));
    }
    alive.swap(merged);
  }
  return out;
}

}  // namespace detail

// Exact distribution of T with per-value conditional success probabilities.
template <class T>
StoppingProfile<T> t_profile(const Weights<T>& w, int max_n = kMaxEnumerate) {
  using P = ProbOf<T>;
  const int n = w.n();
  if (n > max_n) throw std::length_error("weight vector too long for t_profile");
  StoppingProfile<T> prof;
  prof.n = n;
  prof.K = compute_K(w);

  std::map<int, detail::LevelCounts> counts;
  if constexpr (std::is_same_v<T, Rational>) {
    auto scaled = scale_to_integers(w.values);
    BigInt span = 0;
    for (const BigInt& v : scaled.values) span += abs(v);
    if (detail::fits_int64(span + scaled.scale)) {
      std::vector<std::int64_t> v64;
      for (const BigInt& v : scaled.values) v64.push_back(v.template convert_to<std::int64_t>());
      counts = detail::profile_counts<std::int64_t>(
          v64, scaled.scale.template convert_to<std::int64_t>());
    } else {
      counts = detail::profile_counts<BigInt>(scaled.values, scaled.scale);
    }
  } else {
    counts = detail::profile_counts<double>(w.values, 1.0);
  }

  std::uint64_t success_total = 0;
  for (const auto& [t, lc] : counts) {
    if constexpr (std::is_same_v<T, Rational>) {
      prof.t_distribution[t] = Rational(BigInt(lc.stopped), BigInt(1) << t);
      prof.conditional_success[t] =
          Rational(BigInt(lc.success), BigInt(lc.stopped) << (n - t));
    } else {
      prof.t_distribution[t] = std::ldexp(static_cast<double>(lc.stopped), -t);
      prof.conditional_success[t] = static_cast<double>(lc.success) /
                                    std::ldexp(static_cast<double>(lc.stopped), n - t);
    }
    success_total += lc.success;
  }
  if constexpr (std::is_same_v<T, Rational>)
    prof.overall = Rational(BigInt(success_total), BigInt(1) << n);
  else
    prof.overall = std::ldexp(static_cast<double>(success_total), -n);

  prof.dichotomy_holds = true;
  for (const auto& [t, lc] : counts) {
    if (t != prof.K && t < prof.K + 2) prof.dichotomy_holds = false;
  }
  if (prof.K <= n - 4) {
    auto it = counts.find(prof.K);
    std::uint64_t at_k = it == counts.end() ? 0 : it->second.stopped;
    if (at_k != 2u) prof.dichotomy_holds = false;  // 2/2^K = 2^{1-K}
  }
  return prof;
}

}  // namespace radsum
