#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "radsum/rational.hpp"
#include "radsum/weights.hpp"

namespace radsum::testing {

inline Rational Q(const char* s) { return parse_rational(s); }

inline Weights<Rational> W(std::initializer_list<const char*> toks) {
  std::vector<Rational> v;
  for (const char* t : toks) v.push_back(parse_rational(t));
  return Weights<Rational>(std::move(v));
}

// Brute-force oracles: walk all 2^n sign vectors directly, no shared machinery
// with the convolution / meet-in-the-middle paths.

inline std::uint64_t oracle_count_abs_le(const Weights<Rational>& w, const Rational& t,
                                         bool strict = false) {
  const int n = w.n();
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Rational s;
    for (int i = 0; i < n; ++i) s += (mask >> i) & 1 ? w.values[i] : -w.values[i];
    Rational m = abs(s);
    if (strict ? m < t : m <= t) ++count;
  }
  return count;
}

inline std::uint64_t oracle_count_shifted(const Rational& x, const Weights<Rational>& w,
                                          const Rational& t) {
  const int n = w.n();
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Rational s = x;
    for (int i = 0; i < n; ++i) s += (mask >> i) & 1 ? w.values[i] : -w.values[i];
    if (abs(s) <= t) ++count;
  }
  return count;
}

// E(S^k) by direct sign enumeration.
inline Rational oracle_moment(const Weights<Rational>& w, int k) {
  const int n = w.n();
  Rational acc;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Rational s;
    for (int i = 0; i < n; ++i) s += (mask >> i) & 1 ? w.values[i] : -w.values[i];
    Rational p(1);
    for (int j = 0; j < k; ++j) p *= s;
    acc += p;
  }
  return acc / Rational(BigInt(1) << n);
}

// Pr[|S| <= 1] for v_i = 1/sqrt(n): the signed coordinate count m = (#plus -
// #minus) must satisfy m^2 <= n.  Exact integers throughout.
inline Rational oracle_equal_weights(int n) {
  std::vector<std::vector<std::uint64_t>> c(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
  }
  BigInt count = 0;
  for (int j = 0; j <= n; ++j) {
    long m = 2L * j - n;
    if (m * m <= n) count += c[n][j];
  }
  return Rational(count, BigInt(1) << n);
}

}  // namespace radsum::testing
