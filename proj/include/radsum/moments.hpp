#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "radsum/distribution.hpp"
#include "radsum/rational.hpp"
#include "radsum/weights.hpp"

namespace radsum {

// E(S^4) = 3 (sum v_i^2)^2 - 2 sum v_i^4
template <class T>
T fourth_moment(const Weights<T>& w) {
  T s2 = w.norm_sq, s4{};
  for (const T& v : w.values) s4 += v * v * v * v;
  return T(3) * s2 * s2 - T(2) * s4;
}

// E(S^k) for even k, exact over the full PMF.  Brute-force counterpart of the
// closed form above.
inline Rational empirical_even_moment(const Weights<Rational>& w, int k) {
  if (k < 0 || k % 2 != 0) throw std::invalid_argument("even moment order required");
  auto scaled = scale_to_integers(w.values);
  auto atoms = detail::convolve_signs<BigInt>(scaled.values);
  BigInt acc = 0;
  for (const auto& [m, c] : atoms) {
    BigInt p = 1;
    for (int i = 0; i < k; ++i) p *= m;
    acc += p * c;
  }
  BigInt lk = 1;
  for (int i = 0; i < k; ++i) lk *= scaled.scale;
  return Rational(acc, lk * (BigInt(1) << w.n()));
}

// E(|S|^p) by full enumeration; float-valued since p may be fractional.
template <class T>
double empirical_p_moment(const Weights<T>& w, double p) {
  if (p < 2) throw std::domain_error("p must be >= 2");
  auto d = exact_distribution(w);
  double acc = 0;
  for (const auto& a : d.atoms)
    acc += std::pow(std::abs(to_double(a.value)), p) * static_cast<double>(a.count);
  return std::ldexp(acc, -d.n);
}

// B_p = 2^{p/2} Gamma((p+1)/2) / sqrt(pi).  Even integer p reduces through
// Gamma(z+1) = z Gamma(z) and Gamma(1/2) = sqrt(pi) to the exact (p-1)!!.
inline double khintchine_constant(double p) {
  if (p < 2) throw std::domain_error("khintchine_constant requires p >= 2");
  double pr = std::round(p);
  if (pr == p && std::fmod(pr, 2.0) == 0.0 && pr <= 300) {
    double b = 1;
    for (double m = p - 1; m >= 2; m -= 2) b *= m;
    return b;
  }
  return std::exp2(p / 2) * std::tgamma((p + 1) / 2) / std::sqrt(M_PI);
}

// Fourth-moment Chebyshev: Pr[|S| >= t] <= E(S^4) / t^4, capped at 1.
template <class T>
T chebyshev4_tail(const Weights<T>& w, const T& threshold) {
  if (!(T{} < threshold)) throw std::domain_error("threshold must be positive");
  T t4 = threshold * threshold * threshold * threshold;
  T bound = fourth_moment(w) / t4;
  return bound < T(1) ? bound : T(1);
}

// F(c) = (1 - 3 c^2) / 2
template <class T>
T bound_F(const T& c) {
  if (c < T{}) throw std::domain_error("c must be nonnegative");
  return (T(1) - T(3) * c * c) / T(2);
}

// G(c) = (1 - B_p c^{p/2}) / 2
inline double bound_G(double c, double p) {
  if (c < 0) throw std::domain_error("c must be nonnegative");
  double half = p / 2;
  double cp;
  if (std::round(half) == half && half >= 0 && half <= 64) {
    cp = 1;
    for (int i = 0; i < static_cast<int>(half); ++i) cp *= c;
  } else {
    cp = std::pow(c, half);
  }
  return 0.5 * (1 - khintchine_constant(p) * cp);
}

template <class T>
struct MomentReport {
  T second_moment{};
  T fourth_moment{};
  double p = 4;
  double p_moment = 0;
  double khintchine_B = 0;
  T tail_threshold{};
  T tail_bound{};
};

template <class T>
MomentReport<T> make_moment_report(const Weights<T>& w, double p, const T& tail_threshold) {
  MomentReport<T> r;
  r.second_moment = w.norm_sq;
  r.fourth_moment = radsum::fourth_moment(w);
  r.p = p;
  r.p_moment = empirical_p_moment(w, p);
  r.khintchine_B = khintchine_constant(p);
  r.tail_threshold = tail_threshold;
  r.tail_bound = chebyshev4_tail(w, tail_threshold);
  return r;
}

}  // namespace radsum
