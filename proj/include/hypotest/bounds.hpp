#ifndef HYPOTEST_BOUNDS_HPP
#define HYPOTEST_BOUNDS_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <variant>

#include "hypotest/distributions.hpp"
#include "hypotest/errors.hpp"
#include "hypotest/numerics.hpp"

namespace hypotest {

enum class BoundKind { LowerBoundOnBeta, UpperBoundOnBeta, LowerBoundOnN };

inline const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::LowerBoundOnBeta: return "lower_bound_on_beta";
    case BoundKind::UpperBoundOnBeta: return "upper_bound_on_beta";
    case BoundKind::LowerBoundOnN: return "lower_bound_on_n";
  }
  return "?";
}

/// A bound value, its log, and the free parameter (lambda, t or Delta) that
/// attains it. `valid` is false when the bound is vacuous or undefined.
struct BoundResult {
  double value = 0.0;
  double log_value = -kInf;
  std::optional<double> optimizer;
  BoundKind kind = BoundKind::LowerBoundOnBeta;
  bool valid = false;

  /// Error-probability bound from its log; clamped to [0, 1].
  static BoundResult probability(double log_value, BoundKind kind, std::optional<double> optimizer) {
    BoundResult r;
    r.kind = kind;
    r.optimizer = optimizer;
    if (std::isnan(log_value) || log_value == -kInf) {
      r.log_value = -kInf;
      r.value = 0.0;
      r.valid = false;
      return r;
    }
    r.log_value = std::min(log_value, 0.0);
    r.value = std::exp(r.log_value);
    r.valid = true;
    return r;
  }

  /// Sample-size bound; non-trivial only above 1.
  static BoundResult sample_size(double raw, std::optional<double> optimizer) {
    BoundResult r;
    r.kind = BoundKind::LowerBoundOnN;
    r.optimizer = optimizer;
    r.valid = std::isfinite(raw) && raw > 1.0;
    r.value = std::isfinite(raw) ? std::max(raw, 1.0) : 1.0;
    r.log_value = std::log(r.value);
    return r;
  }
};

// ---------------------------------------------------------------------------
// Type I error schedules
// ---------------------------------------------------------------------------

struct ConstantEps {
  double eps;
};
struct LinearEps {};
struct ExponentialEps {
  double c;
};

/// eps(n): constant, 1/n, or exp(-n c).
class ErrorRegime {
 public:
  using Kind = std::variant<ConstantEps, LinearEps, ExponentialEps>;

  static ErrorRegime constant(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("constant regime: eps must lie in (0, 1)");
    return ErrorRegime(ConstantEps{eps});
  }
  static ErrorRegime linear() { return ErrorRegime(LinearEps{}); }
  static ErrorRegime exponential(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("exponential regime: c must be positive");
    return ErrorRegime(ExponentialEps{c});
  }

  const Kind& kind() const noexcept { return kind_; }

  /// Smallest n the schedule is defined for.
  int min_n() const noexcept { return std::holds_alternative<LinearEps>(kind_) ? 2 : 1; }

 private:
  explicit ErrorRegime(Kind k) : kind_(k) {}
  Kind kind_;
};

struct EpsAt {
  double eps;
  double log_eps;
};

/// eps(n) with its exact log; eps may underflow to 0 while log_eps stays exact.
inline EpsAt eps_at(const ErrorRegime& regime, long long n) {
  if (n < regime.min_n()) throw DomainError("eps_at: n below the regime's minimum");
  const double nd = static_cast<double>(n);
  if (const auto* c = std::get_if<ConstantEps>(&regime.kind())) return {c->eps, std::log(c->eps)};
  if (std::holds_alternative<LinearEps>(regime.kind())) return {1.0 / nd, -std::log(nd)};
  const double log_eps = -nd * std::get<ExponentialEps>(regime.kind()).c;
  return {std::exp(log_eps), log_eps};
}

// ---------------------------------------------------------------------------
// Renyi converse and achievability
// ---------------------------------------------------------------------------

namespace detail {

inline void require_n(long long n) {
  if (n < 1) throw DomainError("bound: n must be a positive integer");
}

// Branch A of the converse: 1 - inf_{l>1} exp(((l-1)/l)(log eps + n D_l(P1||P0))).
// Returns the log of the bound and the minimizing lambda.
inline ScalarOptimum converse_reverse_branch(const DistributionPair& pair, double n, double log_eps) {
  auto neg_exponent = [&](double lam) {
    const double d = renyi_divergence(pair, lam, Direction::Reverse);
    return -((lam - 1.0) / lam) * (log_eps + n * d);
  };
  const ScalarOptimum best = maximize_scalar(neg_exponent, Bracket(1.0, kInf));
  // bound = 1 - exp(-best.value), positive only when best.value > 0
  const double log_bound = best.value > 0.0 ? log1mexp(-best.value) : -kInf;
  return {best.arg, log_bound};
}

// Branch B: sup_{l>1} (l/(l-1)) log(1-eps) - n D_l(P0||P1), already in log form.
inline ScalarOptimum converse_forward_branch(const DistributionPair& pair, double n, double log_eps) {
  const double log_keep = log1mexp(log_eps);
  if (log_keep == -kInf) return {kNaN, -kInf};
  auto log_bound = [&](double lam) {
    return lam / (lam - 1.0) * log_keep - n * renyi_divergence(pair, lam, Direction::Forward);
  };
  return maximize_scalar(log_bound, Bracket(1.0, kInf));
}

}  // namespace detail

/// Lower bound on beta_n(eps) from Renyi divergences of order lambda > 1:
/// the larger of the reverse-divergence and forward-divergence branches.
/// `log_eps` in (-inf, 0]; log_eps = 0 (eps = 1) yields the trivial bound.
inline BoundResult renyi_converse(const DistributionPair& pair, long long n, double log_eps) {
  detail::require_n(n);
  if (!(log_eps <= 0.0)) throw DomainError("renyi_converse: log_eps must be <= 0");
  const double nd = static_cast<double>(n);
  const ScalarOptimum a = detail::converse_reverse_branch(pair, nd, log_eps);
  const ScalarOptimum b = detail::converse_forward_branch(pair, nd, log_eps);
  const ScalarOptimum& win = a.value >= b.value ? a : b;
  if (win.value == -kInf) return BoundResult::probability(-kInf, BoundKind::LowerBoundOnBeta, std::nullopt);
  return BoundResult::probability(win.value, BoundKind::LowerBoundOnBeta, win.arg);
}

namespace detail {

// log of (e^{(l-1) n D_l} - alpha e^{l tau}) / e^{(l-1) tau}; NaN when the
// numerator is non-positive.
inline double achievability_log_value(const DistributionPair& pair, double n, double tau, double log_alpha,
                                      double lam) {
  const double a = (lam - 1.0) * n * renyi_divergence(pair, lam, Direction::Reverse);
  const double b = log_alpha + lam * tau;
  if (!(a > b)) return kNaN;
  return log_diff_exp(a, b) - (lam - 1.0) * tau;
}

}  // namespace detail

/// Upper bound on the Type II error of the LLRT with threshold tau, taking
/// the infimum over lambda in (0, 1). `log_alpha` must not exceed the log of
/// the test's actual Type I error; -inf is always safe.
///
/// If the numerator turns non-positive for some lambda the bound is flagged
/// invalid and the smallest positive evaluation is reported.
inline BoundResult renyi_achievability_at_threshold(const DistributionPair& pair, long long n, double tau,
                                                    double log_alpha) {
  detail::require_n(n);
  if (std::isnan(tau) || std::isnan(log_alpha) || log_alpha > 0.0) {
    throw DomainError("renyi_achievability_at_threshold: invalid tau or log_alpha");
  }
  const double nd = static_cast<double>(n);
  bool saw_non_positive = false;
  auto neg_log = [&](double lam) {
    const double v = detail::achievability_log_value(pair, nd, tau, log_alpha, lam);
    if (std::isnan(v)) saw_non_positive = true;
    return -v;
  };
  BoundResult r;
  try {
    const ScalarOptimum best = maximize_scalar(neg_log, Bracket(0.0, 1.0));
    r = BoundResult::probability(-best.value, BoundKind::UpperBoundOnBeta, best.arg);
  } catch (const OptimizationError& e) {
    r = BoundResult::probability(-e.last_finite_value(), BoundKind::UpperBoundOnBeta, std::nullopt);
    saw_non_positive = true;
  }
  if (saw_non_positive) r.valid = false;
  return r;
}

/// LLR threshold guaranteeing Type I error <= e^{-n c} by Markov's inequality:
/// tau = n D_l(P1||P0) - n (D_l(P1||P0) - c) / l, for lambda in (0, 1).
inline double threshold_for_rate(const DistributionPair& pair, long long n, double c, double lambda) {
  detail::require_n(n);
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("threshold_for_rate: lambda must lie in (0, 1)");
  if (!(c > 0.0)) throw DomainError("threshold_for_rate: c must be positive");
  const double d = renyi_divergence(pair, lambda, Direction::Reverse);
  const double gap = d - c;
  if (!(gap > 0.0)) throw DomainError("threshold_for_rate: requires c < D_lambda(P1||P0)");
  const double nd = static_cast<double>(n);
  return nd * d - nd * gap / lambda;
}

// ---------------------------------------------------------------------------
// Phase transition at c = D(P1||P0)
// ---------------------------------------------------------------------------

/// Strong converse for eps = e^{-n c} with c > D(P1||P0):
/// beta >= 1 - inf_{l>1} exp(-n ((l-1)/l)(c - D_l(P1||P0))).
inline BoundResult phase_transition_converse(const DistributionPair& pair, long long n, double c) {
  detail::require_n(n);
  const double d = kl_divergence(pair, Direction::Reverse);
  if (!(c > d)) {
    throw DomainError("phase_transition_converse: requires c > D(P1||P0); use phase_transition_achievability");
  }
  const double nd = static_cast<double>(n);
  const ScalarOptimum a = detail::converse_reverse_branch(pair, nd, -nd * c);
  return BoundResult::probability(a.value, BoundKind::LowerBoundOnBeta, a.arg);
}

/// Achievability for eps = e^{-n c} with c < D(P1||P0):
/// beta < inf_{l in (0,1)} exp(-((1-l)/l) n (D_l(P1||P0) - c)).
inline BoundResult phase_transition_achievability(const DistributionPair& pair, long long n, double c) {
  detail::require_n(n);
  const double d = kl_divergence(pair, Direction::Reverse);
  if (!(c < d)) throw DomainError("phase_transition_achievability: requires c < D(P1||P0)");
  auto exponent = [&](double lam) {
    return (1.0 - lam) / lam * (renyi_divergence(pair, lam, Direction::Reverse) - c);
  };
  const ScalarOptimum best = maximize_scalar(exponent, Bracket(0.0, 1.0));
  const double e = std::max(best.value, 0.0);
  BoundResult r = BoundResult::probability(-static_cast<double>(n) * e, BoundKind::UpperBoundOnBeta, best.arg);
  r.valid = best.value > 0.0;
  return r;
}

// ---------------------------------------------------------------------------
// Sample complexity
// ---------------------------------------------------------------------------

namespace detail {

inline double corollary_sample_size(const DistributionPair& pair, double eps, double delta, double lam) {
  const double w = lam / (lam - 1.0);
  const double first = (-std::log(delta) + w * std::log1p(-eps)) / renyi_divergence(pair, lam, Direction::Forward);
  const double second = (-std::log(eps) + w * std::log1p(-delta)) / renyi_divergence(pair, lam, Direction::Reverse);
  return std::max(first, second);
}

}  // namespace detail

/// Necessary sample size for beta_n(eps) <= delta from the Renyi converse at
/// order lambda > 1; lambda is optimized when omitted. Clamped to n >= 1.
inline BoundResult sample_complexity_renyi(const DistributionPair& pair, double eps, double delta,
                                           std::optional<double> lambda = std::nullopt) {
  if (!(eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 1.0)) {
    throw DomainError("sample_complexity_renyi: eps and delta must lie in (0, 1)");
  }
  if (lambda) {
    if (!(*lambda > 1.0)) throw DomainError("sample_complexity_renyi: lambda must exceed 1");
    return BoundResult::sample_size(detail::corollary_sample_size(pair, eps, delta, *lambda), *lambda);
  }
  const ScalarOptimum best = maximize_scalar(
      [&](double lam) { return detail::corollary_sample_size(pair, eps, delta, lam); }, Bracket(1.0, kInf));
  return BoundResult::sample_size(best.value, best.arg);
}

/// Bayesian-setting sample complexity rewritten for the asymmetric problem:
/// n >= (1/2) (l/(1-l)) log(1/2eps) / D_l(P0||P1), l = log(1/2d)/(log(1/2d)+log(1/2eps)).
inline BoundResult sample_complexity_pensia(const DistributionPair& pair, double eps, double delta) {
  if (!(eps > 0.0 && eps < 0.5 && delta > 0.0 && delta < 0.5)) {
    throw DomainError("sample_complexity_pensia: eps and delta must lie in (0, 1/2)");
  }
  const double le = -std::log(2.0 * eps);
  const double ld = -std::log(2.0 * delta);
  const double lam = ld / (ld + le);
  const double raw = 0.5 * lam / (1.0 - lam) * le / renyi_divergence(pair, lam, Direction::Forward);
  return BoundResult::sample_size(raw, lam);
}

// ---------------------------------------------------------------------------
// Baseline converse bounds
// ---------------------------------------------------------------------------

/// Fano-type bound from the binary data-processing inequality for KL:
/// (1 - alpha) log(1/beta) <= n D(P0||P1) + log 2, i.e.
/// beta >= exp(-(n D(P0||P1) + log 2) / (1 - alpha)).
inline BoundResult fano_bound(const DistributionPair& pair, long long n, double log_eps) {
  if (n < 0) throw DomainError("fano_bound: n must be non-negative");
  if (!(log_eps <= 0.0)) throw DomainError("fano_bound: log_eps must be <= 0");
  const double keep = -std::expm1(log_eps);  // 1 - alpha
  if (!(keep > 0.0)) return BoundResult::probability(-kInf, BoundKind::LowerBoundOnBeta, std::nullopt);
  const double lv = -(static_cast<double>(n) * kl_divergence(pair, Direction::Forward) + std::numbers::ln2) / keep;
  return BoundResult::probability(lv, BoundKind::LowerBoundOnBeta, std::nullopt);
}

/// Hellinger bound: beta >= 1 - sqrt(1 - (1 - H^2)^{2n}) - alpha.
inline BoundResult hellinger_bound(const DistributionPair& pair, long long n, double log_eps) {
  if (n < 0) throw DomainError("hellinger_bound: n must be non-negative");
  if (!(log_eps <= 0.0)) throw DomainError("hellinger_bound: log_eps must be <= 0");
  const double h2 = hellinger_squared(pair);
  const double log_affinity_pow = 2.0 * static_cast<double>(n) * std::log1p(-h2);
  const double inner = -std::expm1(log_affinity_pow);
  const double value = 1.0 - std::sqrt(inner) - std::exp(log_eps);
  return BoundResult::probability(value > 0.0 ? std::log(value) : -kInf, BoundKind::LowerBoundOnBeta,
                                  std::nullopt);
}

namespace detail {

// log beta >= -n D(P0||P1) - sqrt(nV) Q^{-1}(1 - alpha - (B+Delta)/sqrt n) + log Delta - (1/2) log n.
// Q^{-1}(1 - s) = -Q^{-1}(s). NaN outside the feasible region.
inline double berry_esseen_log_value(const LLRMoments& m, double n, double alpha, double delta_param) {
  const double s = alpha + (m.berry_constant + delta_param) / std::sqrt(n);
  if (!(s > 0.0 && s < 1.0) || !(delta_param > 0.0)) return kNaN;
  return -n * m.mean + std::sqrt(n * m.variance) * q_inverse(s) + std::log(delta_param) - 0.5 * std::log(n);
}

}  // namespace detail

/// Berry-Esseen converse. Delta is optimized over (0, sqrt(n)(1-alpha) - B)
/// when omitted; invalid when that range is empty.
inline BoundResult berry_esseen_bound(const DistributionPair& pair, long long n, double log_eps,
                                      std::optional<double> delta_param = std::nullopt) {
  detail::require_n(n);
  if (!(log_eps <= 0.0)) throw DomainError("berry_esseen_bound: log_eps must be <= 0");
  const LLRMoments m = llr_moments(pair);
  const double nd = static_cast<double>(n);
  const double alpha = std::exp(log_eps);
  const auto invalid = [&](std::optional<double> opt) {
    return BoundResult::probability(-kInf, BoundKind::LowerBoundOnBeta, opt);
  };
  if (!(m.variance > 0.0) || !std::isfinite(m.berry_constant)) return invalid(delta_param);
  if (delta_param) {
    if (!(*delta_param > 0.0)) throw DomainError("berry_esseen_bound: Delta must be positive");
    const double lv = detail::berry_esseen_log_value(m, nd, alpha, *delta_param);
    if (std::isnan(lv)) return invalid(delta_param);
    return BoundResult::probability(lv, BoundKind::LowerBoundOnBeta, delta_param);
  }
  const double upper = std::sqrt(nd) * (1.0 - alpha) - m.berry_constant;
  if (!(upper > 2e-9)) return invalid(std::nullopt);
  try {
    const ScalarOptimum best = maximize_scalar(
        [&](double d) { return detail::berry_esseen_log_value(m, nd, alpha, d); }, Bracket(0.0, upper));
    return BoundResult::probability(best.value, BoundKind::LowerBoundOnBeta, best.arg);
  } catch (const OptimizationError&) {
    return invalid(std::nullopt);
  }
}

/// The five additive terms of the Gaussian smoothing-out bound at a given t.
struct SmoothingOutTerms {
  double divergence;  // -n D(P0||P1)
  double type1;       // log(1 - alpha) / (1 - e^{-2t})
  double linear;      // -n t
  double shift;       // -(delta^2/2)(e^t - 1)^2, delta in units of sigma
  double curvature;   // -n (cosh(2t) - 1)

  double sum() const noexcept { return divergence + type1 + linear + shift + curvature; }
};

inline SmoothingOutTerms smoothing_out_terms(const DistributionPair& pair, long long n, double log_eps, double t) {
  const auto* g = pair.get_if<GaussianPair>();
  if (g == nullptr) throw UnsupportedFamilyError("smoothing_out_bound: only defined for Gaussian pairs");
  if (!(t > 0.0)) throw DomainError("smoothing_out_bound: t must be positive");
  const double nd = static_cast<double>(n);
  const double half_snr = 0.5 * detail::gaussian_snr(*g);
  const double log_keep = log1mexp(log_eps);
  const double em1 = std::expm1(t);
  const double sh = std::sinh(t);
  SmoothingOutTerms terms;
  terms.divergence = -nd * half_snr;
  terms.type1 = log_keep == 0.0 ? 0.0 : log_keep / -std::expm1(-2.0 * t);
  terms.linear = -nd * t;
  terms.shift = -half_snr * em1 * em1;
  terms.curvature = -nd * 2.0 * sh * sh;  // cosh(2t) - 1 = 2 sinh^2 t
  return terms;
}

/// Smoothing-out converse, Gaussian pairs only. t is optimized over (0, 10)
/// when omitted.
inline BoundResult smoothing_out_bound(const DistributionPair& pair, long long n, double log_eps,
                                       std::optional<double> t_param = std::nullopt) {
  detail::require_n(n);
  if (!pair.is_gaussian()) throw UnsupportedFamilyError("smoothing_out_bound: only defined for Gaussian pairs");
  if (!(log_eps <= 0.0)) throw DomainError("smoothing_out_bound: log_eps must be <= 0");
  if (t_param) {
    return BoundResult::probability(smoothing_out_terms(pair, n, log_eps, *t_param).sum(),
                                    BoundKind::LowerBoundOnBeta, t_param);
  }
  try {
    const ScalarOptimum best = maximize_scalar(
        [&](double t) { return smoothing_out_terms(pair, n, log_eps, t).sum(); }, Bracket(0.0, 10.0));
    return BoundResult::probability(best.value, BoundKind::LowerBoundOnBeta, best.arg);
  } catch (const OptimizationError&) {
    return BoundResult::probability(-kInf, BoundKind::LowerBoundOnBeta, std::nullopt);
  }
}

}  // namespace hypotest

#endif  // HYPOTEST_BOUNDS_HPP
