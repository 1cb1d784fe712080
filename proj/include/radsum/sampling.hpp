#pragma once

#include <random>
#include <utility>
#include <vector>

#include "radsum/rational.hpp"
#include "radsum/weights.hpp"

namespace radsum {

// Random rational weight vector with sum v_i^2 <= 1: integer coordinates k_i
// over a common denominator D with D^2 >= sum k_i^2.
inline Weights<Rational> random_instance(std::mt19937_64& rng, int n_min, int n_max,
                                         int coord_max = 40) {
  std::uniform_int_distribution<int> nd(n_min, n_max), kd(0, coord_max), slack(0, 2);
  for (;;) {
    int n = nd(rng);
    std::vector<long> ks(n);
    long s = 0;
    for (auto& k : ks) {
      k = kd(rng);
      s += k * k;
    }
    if (s == 0) continue;
    long d = 0;
    while (d * d < s) ++d;
    d += slack(rng);  // occasionally leave headroom below the sphere
    std::vector<Rational> v;
    v.reserve(n);
    for (long k : ks) v.emplace_back(k, d);
    return Weights<Rational>(std::move(v));
  }
}

// Random (x, w) with |x| <= 1 and sum v_i^2 <= c (1 + |x|)^2.
inline std::pair<Rational, Weights<Rational>> random_lemma_sample(std::mt19937_64& rng,
                                                                 const Rational& c, int n_min,
                                                                 int n_max, int coord_max = 40) {
  std::uniform_int_distribution<int> nd(n_min, n_max), kd(0, coord_max), xd(-64, 64);
  for (;;) {
    Rational x(xd(rng), 64);
    Rational budget = c * (1 + abs(x)) * (1 + abs(x));
    if (budget == 0) continue;
    int n = nd(rng);
    std::vector<long> ks(n);
    long s = 0;
    for (auto& k : ks) {
      k = kd(rng);
      s += k * k;
    }
    if (s == 0) continue;
    // smallest integer D with s / D^2 <= budget
    BigInt d = 1;
    while (Rational(BigInt(s), d * d) > budget) ++d;
    std::vector<Rational> v;
    v.reserve(n);
    for (long k : ks) v.emplace_back(BigInt(k), d);
    return {x, Weights<Rational>(std::move(v))};
  }
}

}  // namespace radsum
