#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "radsum/rational.hpp"

namespace radsum {

// Weight vector for a signed sum S = sum_i a_i v_i.
template <class T>
struct Weights {
  std::vector<T> values;
  T norm_sq{};

  Weights() = default;
  explicit Weights(std::vector<T> v) : values(std::move(v)) {
    norm_sq = T{};
    for (const T& x : values) norm_sq += x * x;
  }

  int n() const { return static_cast<int>(values.size()); }
};

template <class T>
Weights<T> make_weights(std::initializer_list<T> v) {
  return Weights<T>(std::vector<T>(v));
}

inline Weights<Rational> rational_weights(std::initializer_list<const char*> toks) {
  std::vector<Rational> v;
  for (const char* t : toks) v.push_back(parse_rational(t));
  return Weights<Rational>(std::move(v));
}

template <class T>
T num_abs(const T& x) {
  return x < T{} ? T(-x) : x;
}

// The "oddball" arrangement v_n >= v_1 >= v_{n-1} >= v_2 >= v_3 >= ... >= v_{n-2}:
// take absolute values, pad with zeros to n >= 4, then place the weights sorted
// descending as u_1..u_n at positions n, 1, n-1, 2, 3, ..., n-2.  Ties keep the
// original order (stable).
template <class T>
Weights<T> canonicalize(const Weights<T>& w) {
  std::vector<T> u;
  u.reserve(std::max<std::size_t>(w.values.size(), 4));
  for (const T& x : w.values) u.push_back(num_abs(x));
  while (u.size() < 4) u.push_back(T{});
  std::stable_sort(u.begin(), u.end(), [](const T& a, const T& b) { return b < a; });

  const std::size_t n = u.size();
  std::vector<T> out(n);
  out[n - 1] = u[0];
  out[0] = u[1];
  out[n - 2] = u[2];
  out[1] = u[3];
  for (std::size_t i = 4; i < n; ++i) out[i - 2] = u[i];
  return Weights<T>(std::move(out));
}

template <class T>
bool is_canonical(const Weights<T>& w) {
  const auto& v = w.values;
  const std::size_t n = v.size();
  if (n < 4) return false;
  for (const T& x : v) {
    if (x < T{}) return false;
  }
  // v_n >= v_1 >= v_{n-1} >= v_2 >= v_3 >= ... >= v_{n-2}
  if (v[n - 1] < v[0] || v[0] < v[n - 2] || v[n - 2] < v[1]) return false;
  for (std::size_t i = 1; i + 3 < n; ++i) {
    if (v[i] < v[i + 1]) return false;
  }
  return true;
}

// Common-denominator scaling: values as integers m_i over one shared scale L.
struct ScaledWeights {
  std::vector<BigInt> values;
  BigInt scale = 1;
};

inline ScaledWeights scale_to_integers(const std::vector<Rational>& vals) {
  ScaledWeights s;
  for (const Rational& v : vals) s.scale = lcm(s.scale, BigInt(denominator(v)));
  s.values.reserve(vals.size());
  for (const Rational& v : vals)
    s.values.push_back(BigInt(numerator(v)) * (s.scale / BigInt(denominator(v))));
  return s;
}

}  // namespace radsum
