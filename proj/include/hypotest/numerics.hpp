#ifndef HYPOTEST_NUMERICS_HPP
#define HYPOTEST_NUMERICS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "hypotest/errors.hpp"

namespace hypotest {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------------------
// Log-domain arithmetic
// ---------------------------------------------------------------------------

/// log(sum_i exp(terms[i])). Entries may be -inf; +inf and NaN propagate.
inline double log_sum_exp(std::span<const double> terms) {
  if (terms.empty()) throw DomainError("log_sum_exp: empty list");
  const double top = *std::max_element(terms.begin(), terms.end());
  if (std::isnan(top)) return kNaN;
  if (top == -kInf) return -kInf;
  if (top == kInf) return kInf;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - top);
  return top + std::log(acc);
}

inline double log_sum_exp(double a, double b) {
  const double terms[2] = {a, b};
  return log_sum_exp(terms);
}

/// log(1 - exp(x)) for x <= 0.
inline double log1mexp(double x) {
  if (x > 0.0) return kNaN;
  if (x == 0.0) return -kInf;
  return x > -std::numbers::ln2 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

/// log(exp(a) - exp(b)) for a >= b; -inf when a == b.
inline double log_diff_exp(double a, double b) {
  if (b == -kInf) return a;
  if (b > a) return kNaN;
  return a + log1mexp(b - a);
}

// ---------------------------------------------------------------------------
// Gaussian tail
// ---------------------------------------------------------------------------

inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2 pi))

/// Standard Gaussian log density.
inline double log_phi(double x) { return -0.5 * x * x - kLogSqrt2Pi; }

/// Standard Gaussian upper tail Q(x) = P(Z > x).
inline double q_function(double x) {
  if (!std::isfinite(x)) throw DomainError("q_function: non-finite argument");
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

/// log Q(x), accurate in both tails. Far in the upper tail, where erfc
/// underflows, the Mills-ratio asymptotic series is summed to full precision.
inline double log_q_function(double x) {
  if (std::isnan(x)) throw DomainError("log_q_function: NaN argument");
  if (x == kInf) return -kInf;
  if (x == -kInf) return 0.0;
  if (x < -5.0) return std::log1p(-q_function(-x));
  if (x <= 37.0) return std::log(q_function(x));
  // Q(x) = phi(x)/x * (1 - 1/x^2 + 3/x^4 - 15/x^6 + ...)
  const double inv2 = 1.0 / (x * x);
  double term = 1.0;
  double series = 0.0;
  for (int k = 1; k < 30; ++k) {
    term *= -(2.0 * k - 1.0) * inv2;
    series += term;
    if (std::abs(term) < 1e-18) break;
  }
  return log_phi(x) - std::log(x) + std::log1p(series);
}

namespace detail {

// Root of log Q(x) = log_p for log_p <= log(1/2), i.e. x >= 0.
// Safeguarded Newton: every iterate stays inside a shrinking bracket.
inline double q_inverse_upper(double log_p) {
  double lo = 0.0;
  double hi = 1.0;
  while (log_q_function(hi) > log_p) {
    lo = hi;
    hi *= 2.0;
  }
  const double t = -2.0 * log_p;
  double x = t > 2.0 * std::numbers::pi ? std::sqrt(t - std::log(2.0 * std::numbers::pi * t)) : 0.5 * (lo + hi);
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double lq = log_q_function(x);
    const double h = lq - log_p;
    if (h == 0.0) return x;
    if (h > 0.0) lo = x; else hi = x;
    // d/dx log Q(x) = -phi(x) / Q(x)
    const double slope = -std::exp(log_phi(x) - lq);
    double next = x - h / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x)) || hi - lo <= 4e-16 * std::max(1.0, hi)) {
      return next;
    }
    x = next;
  }
  return x;
}

}  // namespace detail

/// Inverse of the Gaussian tail given log p, for log p in (-inf, 0).
/// Accurate for log p far below the double underflow threshold.
inline double q_inverse_log(double log_p) {
  if (std::isnan(log_p) || log_p >= 0.0 || log_p == -kInf) {
    throw DomainError("q_inverse_log: log p must lie in (-inf, 0)");
  }
  if (log_p <= -std::numbers::ln2) return detail::q_inverse_upper(log_p);
  // p > 1/2: Q(x) = p  <=>  Q(-x) = 1 - p
  return -detail::q_inverse_upper(log1mexp(log_p));
}

/// x with Q(x) = p, for p in (0, 1).
inline double q_inverse(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("q_inverse: p must lie in (0, 1)");
  if (p == 0.5) return 0.0;
  if (p < 0.5) return detail::q_inverse_upper(std::log(p));
  return -detail::q_inverse_upper(std::log1p(-p));  // 1 - p is exact here
}

// ---------------------------------------------------------------------------
// Scalar optimization
// ---------------------------------------------------------------------------

/// Search interval for a scalar parameter. `hi` may be +inf. Open ends are
/// closed by an inward offset of `tolerance`.
struct Bracket {
  double lo;
  double hi;
  double tolerance = 1e-9;

  Bracket(double lo_, double hi_, double tol_ = 1e-9) : lo(lo_), hi(hi_), tolerance(tol_) {
    if (!(lo < hi)) throw DomainError("Bracket: requires lo < hi");
    if (!(tolerance > 0.0)) throw DomainError("Bracket: requires tolerance > 0");
    if (!std::isfinite(lo)) throw DomainError("Bracket: lo must be finite");
  }

  bool unbounded() const noexcept { return hi == kInf; }
};

struct ScalarOptimum {
  double arg;
  double value;
};

inline constexpr int kScanPoints = 2048;
inline constexpr double kUnboundedSpan = 1e6;

namespace detail {

// Scan points: log-spaced offsets from `lo` for unbounded brackets,
// logit-spaced (clustered at both ends) for bounded ones.
inline std::vector<double> scan_points(const Bracket& b) {
  std::vector<double> xs(kScanPoints);
  const double first = b.lo + b.tolerance;
  if (b.unbounded()) {
    const double log_lo = std::log(b.tolerance);
    const double log_hi = std::log(kUnboundedSpan);
    for (int i = 0; i < kScanPoints; ++i) {
      const double s = log_lo + (log_hi - log_lo) * i / (kScanPoints - 1);
      xs[i] = b.lo + std::exp(s);
    }
    xs.front() = first;
    return xs;
  }
  const double width = b.hi - b.lo;
  const double last = b.hi - b.tolerance;
  if (!(last > first)) {
    std::fill(xs.begin(), xs.end(), 0.5 * (b.lo + b.hi));
    return xs;
  }
  const double u = b.tolerance / width;
  const double s_lo = std::log(u) - std::log1p(-u);
  const double s_hi = -s_lo;
  for (int i = 0; i < kScanPoints; ++i) {
    const double s = s_lo + (s_hi - s_lo) * i / (kScanPoints - 1);
    xs[i] = b.lo + width / (1.0 + std::exp(-s));
  }
  xs.front() = first;
  xs.back() = last;
  return xs;
}

}  // namespace detail

/// Maximizes f over the bracket: a dense scan (log-spaced toward open or
/// unbounded ends) locates the best cell, then golden-section search refines
/// it. The returned value is never below the best scanned value.
///
/// Non-finite evaluations are treated as -inf; if more than half of the scan
/// is non-finite an OptimizationError carrying the last finite value is thrown.
template <typename F>
ScalarOptimum maximize_scalar(F&& f, const Bracket& bracket) {
  const std::vector<double> xs = detail::scan_points(bracket);
  std::vector<double> fs(xs.size());
  int non_finite = 0;
  double last_finite = kNaN;
  std::size_t best = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = f(xs[i]);
    if (std::isfinite(v)) {
      fs[i] = v;
      last_finite = v;
    } else {
      fs[i] = (v == kInf) ? kInf : -kInf;
      ++non_finite;
    }
    if (fs[i] > fs[best]) best = i;
  }
  if (2 * non_finite > static_cast<int>(xs.size())) {
    throw OptimizationError("maximize_scalar: objective non-finite on most of the bracket", last_finite);
  }
  if (fs[best] == kInf) return {xs[best], kInf};

  ScalarOptimum result{xs[best], fs[best]};
  double a = xs[best == 0 ? 0 : best - 1];
  double b = xs[std::min(best + 1, xs.size() - 1)];
  if (!(b > a)) return result;

  constexpr double kInvPhi = 0.61803398874989484820;
  auto eval = [&](double x) {
    const double v = f(x);
    const double safe = std::isfinite(v) ? v : -kInf;
    if (safe > result.value) result = {x, safe};
    return safe;
  };
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  for (int iter = 0; iter < 400; ++iter) {
    if (b - a <= 1e-15 * (std::abs(a) + std::abs(b)) + 1e-300) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = eval(d);
    }
  }
  return result;
}

}  // namespace hypotest

#endif  // HYPOTEST_NUMERICS_HPP
