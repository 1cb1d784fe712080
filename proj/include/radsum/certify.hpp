#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "radsum/distribution.hpp"
#include "radsum/moments.hpp"
#include "radsum/rational.hpp"
#include "radsum/stopping.hpp"
#include "radsum/weights.hpp"

namespace radsum {

enum class BoundMode { F, G };

// Hypothesis of the shifted-sum lemma: sum v_i^2 <= c (1 + |x|)^2.
template <class T>
bool lemma_hypothesis(const T& x, const Weights<T>& w, const T& c) {
  if (T(1) < num_abs(x)) throw std::domain_error("lemma_hypothesis requires |x| <= 1");
  if (c < T{}) throw std::domain_error("lemma_hypothesis requires c >= 0");
  T s = T(1) + num_abs(x);
  return !(c * s * s < w.norm_sq);
}

// c value fed to F (or G): ((K+1)^2 - T) / (2K+1)^2 on the rising piece,
// K / (4K+2) on the flat piece.  The pieces agree at 2T = 3K+2.
inline Rational piece_c(int K, int T) {
  if (K < 2) throw std::domain_error("two-piece bound requires K >= 2");
  if (T < K) throw std::domain_error("two-piece bound requires T >= K");
  if (2 * T <= 3 * K + 2) {
    long q = static_cast<long>(2 * K + 1);
    return Rational(static_cast<long>(K + 1) * (K + 1) - T, q * q);
  }
  return Rational(K, 4 * K + 2);
}

inline Rational two_piece_F(int K, int T) { return bound_F(piece_c(K, T)); }

inline double two_piece_G(int K, int T, double p) {
  return bound_G(to_double(piece_c(K, T)), p);
}

// Variants aware of n: T = n-1 and T = n-2 carry the stronger conditional
// bound of 1/2 (cases 1 and 2).
inline Rational two_piece_F(int K, int T, int n) {
  if (T >= n - 2) return Rational(1, 2);
  return two_piece_F(K, T);
}

inline double two_piece_G(int K, int T, int n, double p) {
  if (T >= n - 2) return 0.5;
  return two_piece_G(K, T, p);
}

struct BranchBound {
  int case_label = 0;
  Rational c;       // 0 for cases 1-2
  Rational bound;   // F-mode value (1/2 for cases 1-2)
  double bound_g = 0;
};

template <class T>
struct BoundCertificate {
  Weights<T> instance;  // canonicalized
  int K = 0;
  std::map<int, BranchBound> branch_bounds;
  Rational certified_F;           // sound lower bound from the K-only average
  double certified = 0;           // active-mode value (== certified_F in F-mode)
  std::optional<Prob> exact;
  BoundMode mode = BoundMode::F;
  double p = 4;
  bool experimental = false;      // G-mode reuses the case machinery untouched
  bool sound = true;              // certified <= exact whenever exact is known
  std::optional<Rational> diagnostic_F;  // sharper sum over the exact T-law
};

// Weighted average over the T = K / T >= K+2 split, in F-mode exact rationals.
inline Rational weighted_certified_F(int K) {
  Rational pk = pow2_rational(1 - K);  // Pr[T = K]
  return pk * two_piece_F(K, K) + (Rational(1) - pk) * two_piece_F(K, K + 2);
}

inline double weighted_certified_G(int K, double p) {
  double pk = std::ldexp(1.0, 1 - K);
  return pk * two_piece_G(K, K, p) + (1 - pk) * two_piece_G(K, K + 2, p);
}

template <class T>
BoundCertificate<T> certify_instance(const Weights<T>& w, BoundMode mode = BoundMode::F,
                                     double p = 3.95937, bool diagnostic = false) {
  if (T(1) < w.norm_sq) throw std::invalid_argument("not a Tomaszewski instance: sum v_i^2 > 1");
  BoundCertificate<T> cert;
  cert.mode = mode;
  cert.p = p;
  cert.experimental = (mode == BoundMode::G);
  cert.instance = canonicalize(w);
  const int n = cert.instance.n();
  cert.K = compute_K(cert.instance);

  for (int t = cert.K; t <= n - 1; ++t) {
    BranchBound bb;
    bb.case_label = case_of(t, cert.K, n);
    if (bb.case_label <= 2) {
      bb.bound = Rational(1, 2);
      bb.bound_g = 0.5;
    } else {
      bb.c = piece_c(cert.K, t);
      bb.bound = bound_F(bb.c);
      bb.bound_g = bound_G(to_double(bb.c), p);
    }
    cert.branch_bounds.emplace(t, std::move(bb));
  }

  double certified_g;
  if (cert.K >= n - 2) {
    cert.certified_F = Rational(1, 2);
    certified_g = 0.5;
  } else {
    cert.certified_F = weighted_certified_F(cert.K);
    certified_g = weighted_certified_G(cert.K, p);
  }
  cert.certified = mode == BoundMode::F ? to_double(cert.certified_F) : certified_g;

  if (n <= kMaxMitm) {
    cert.exact = prob_abs_le(cert.instance, T(1));
    if constexpr (std::is_same_v<T, Rational>) {
      cert.sound = !(cert.exact->exact() < cert.certified_F);
      if (mode == BoundMode::G && cert.exact->value() < certified_g) cert.sound = false;
    } else {
      cert.sound = !(cert.exact->value() < cert.certified);
    }
  }

  if (diagnostic && n <= kMaxEnumerate) {
    auto prof = t_profile(cert.instance);
    Rational acc;
    for (const auto& [t, pt] : prof.t_distribution) {
      Rational prt;
      if constexpr (std::is_same_v<T, Rational>)
        prt = pt;
      else
        prt = Rational(BigInt(std::llround(std::ldexp(pt, t))), BigInt(1) << t);
      acc += prt * two_piece_F(cert.K, t, n);
    }
    cert.diagnostic_F = acc;
  }
  return cert;
}

// Global verification of the weighted bound against 13/32.
struct GlobalCheck {
  int K = 0;
  BigInt lhs, rhs;     // 64(K^2+K) vs 2^{K-1}(40K^2+40K-15)
  Rational weighted;   // the weighted-F combination
  Rational margin;     // weighted - 13/32
  bool holds = false;
};

struct GlobalReport {
  std::vector<GlobalCheck> checks;
  int min_margin_K = 0;
  bool all_hold = true;
};

inline GlobalReport verify_global(int K_max) {
  if (K_max < 2) throw std::invalid_argument("verify_global requires K_max >= 2");
  GlobalReport rep;
  for (int K = 2; K <= K_max; ++K) {
    GlobalCheck chk;
    chk.K = K;
    BigInt k(K);
    chk.lhs = 64 * (k * k + k);
    chk.rhs = (BigInt(1) << (K - 1)) * (40 * k * k + 40 * k - 15);
    chk.weighted = weighted_certified_F(K);
    chk.margin = chk.weighted - Rational(13, 32);
    chk.holds = chk.lhs < chk.rhs && Rational(13, 32) < chk.weighted;
    if (!chk.holds) rep.all_hold = false;
    if (rep.checks.empty() || chk.margin < rep.checks[rep.min_margin_K - 2].margin)
      rep.min_margin_K = K;
    rep.checks.push_back(std::move(chk));
  }
  return rep;
}

// The Khintchine-refined constant G(1/4) at a given p.
inline double improved_constant(double p) { return bound_G(0.25, p); }

struct ScanResult {
  double best_p = 0;
  double best_value = 0;
  std::vector<std::pair<double, double>> grid;
};

inline ScanResult scan_improved(double p_lo, double p_hi, int steps) {
  if (p_lo < 2 || p_hi < p_lo || steps < 1) throw std::invalid_argument("bad scan range");
  ScanResult r;
  r.best_value = -1;
  for (int i = 0; i <= steps; ++i) {
    double p = p_lo + (p_hi - p_lo) * i / steps;
    double v = improved_constant(p);
    r.grid.emplace_back(p, v);
    if (v > r.best_value) {
      r.best_value = v;
      r.best_p = p;
    }
  }
  return r;
}

// Lemma verification over a sample set: every (x, w) must satisfy the
// hypothesis with this c, and the exact shifted probability must clear the
// bound.  Reports the smallest observed slack.
template <class T>
struct LemmaSample {
  T x;
  Weights<T> w;
};

template <class T>
struct LemmaReport {
  std::size_t checked = 0;
  double bound = 0;
  double min_slack = 0;
  std::size_t worst_index = 0;
  bool all_hold = true;
};

template <class T>
LemmaReport<T> verify_lemma(const std::vector<LemmaSample<T>>& samples, const T& c,
                            BoundMode mode = BoundMode::F, double p = 3.95937) {
  LemmaReport<T> rep;
  Rational fc;
  double bound;
  if (mode == BoundMode::F) {
    if constexpr (std::is_same_v<T, Rational>) {
      fc = bound_F(c);
      bound = to_double(fc);
    } else {
      bound = 0.5 * (1 - 3 * to_double(c) * to_double(c));
    }
  } else {
    bound = bound_G(to_double(c), p);
  }
  rep.bound = bound;
  bool first = true;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!lemma_hypothesis(s.x, s.w, c))
      throw std::invalid_argument("lemma hypothesis fails at sample " + std::to_string(i));
    Prob pr = shifted_prob(s.x, s.w, T(1));
    double slack;
    if (mode == BoundMode::F) {
      if constexpr (std::is_same_v<T, Rational>) {
        Rational sl = pr.exact() - fc;
        if (sl < 0) rep.all_hold = false;
        slack = to_double(sl);
      } else {
        slack = pr.value() - bound;
        if (slack < 0) rep.all_hold = false;
      }
    } else {
      slack = pr.value() - bound;
      if (slack < 0) rep.all_hold = false;
    }
    if (first || slack < rep.min_slack) {
      rep.min_slack = slack;
      rep.worst_index = i;
      first = false;
    }
    ++rep.checked;
  }
  return rep;
}

// --- fixed polynomial-identity checks from the case analysis ---

// 1 - 2(1-x)^2 = (2/7)(1+x)^2 - (1/7)(4x-3)^2, by coefficient expansion.
inline bool check_completion_identity() {
  // coefficients in x: LHS = -1 + 4x - 2x^2
  Rational l0(-1), l1(4), l2(-2);
  // RHS = (2/7)(1 + 2x + x^2) - (1/7)(9 - 24x + 16x^2)
  Rational r0 = Rational(2, 7) - Rational(9, 7);
  Rational r1 = Rational(4, 7) + Rational(24, 7);
  Rational r2 = Rational(2, 7) - Rational(16, 7);
  return l0 == r0 && l1 == r1 && l2 == r2;
}

// 2 - (K+1)(1-x)^2 <= (K+1)/(2K+1) (1+x)^2 on a dense rational x-grid, plus the
// exact completed-square identity behind it.
inline bool check_case3_algebra(int K_max, int grid_den) {
  for (int K = 2; K <= K_max; ++K) {
    Rational k1(K + 1), q(2 * K + 1);
    for (int j = 0; j <= grid_den; ++j) {
      Rational x(j, grid_den);
      Rational lhs = Rational(2) - k1 * (1 - x) * (1 - x);
      Rational sq = k1 * x - Rational(K);
      Rational rhs = k1 / q * (1 + x) * (1 + x) - Rational(2) / q * sq * sq;
      if (lhs != rhs) return false;
      if (k1 / q * (1 + x) * (1 + x) < lhs) return false;
    }
  }
  return true;
}

// x^2/K >= 1/(K+1) - (1-x)^2, same treatment.
inline bool check_case5_algebra(int K_max, int grid_den) {
  for (int K = 2; K <= K_max; ++K) {
    Rational k(K), k1(K + 1);
    for (int j = 0; j <= grid_den; ++j) {
      Rational x(j, grid_den);
      Rational lhs = x * x / k;
      Rational sq = k1 * x - k;
      Rational rhs = Rational(1) / k1 - (1 - x) * (1 - x) + sq * sq / (k * k1);
      if (lhs != rhs) return false;
      if (lhs < Rational(1) / k1 - (1 - x) * (1 - x)) return false;
    }
  }
  return true;
}

}  // namespace radsum
