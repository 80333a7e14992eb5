#ifndef HYPOTEST_ORACLE_HPP
#define HYPOTEST_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "hypotest/distributions.hpp"
#include "hypotest/errors.hpp"
#include "hypotest/numerics.hpp"

namespace hypotest {

/// Exact optimal Type II error beta_n(eps) and the test that attains it.
struct NPResult {
  double beta = 1.0;
  double log_beta = 0.0;
  double log_power = -kInf;  // log(1 - beta), resolved even when beta rounds to 1
  double threshold = 0.0;    // LLR threshold, or the sample-mean threshold for Gaussians
  double randomization = 0.0;  // P(accept H1) on the threshold class
  double achieved_alpha = 0.0;
};

struct NPOptions {
  /// Randomize on the boundary class so the budget eps is met exactly.
  /// Off gives the best deterministic LLRT.
  bool randomized = true;
};

/// Gaussian Neyman-Pearson: threshold the sample mean at
/// gamma = mu + sigma Q^{-1}(eps)/sqrt(n) (mirrored for delta < 0).
inline NPResult np_exact_gaussian(const DistributionPair& pair, long long n, double log_eps) {
  const auto* g = pair.get_if<GaussianPair>();
  if (g == nullptr) throw UnsupportedFamilyError("np_exact_gaussian: requires a Gaussian pair");
  if (n < 1) throw DomainError("np_exact_gaussian: n must be positive");
  if (std::isnan(log_eps) || log_eps > 0.0) throw DomainError("np_exact_gaussian: log_eps must be <= 0");
  const double sign = g->delta > 0.0 ? 1.0 : -1.0;
  NPResult r;
  if (log_eps == 0.0) {  // always accept H1
    r.beta = 0.0;
    r.log_beta = -kInf;
    r.log_power = 0.0;
    r.threshold = -sign * kInf;
    r.achieved_alpha = 1.0;
    return r;
  }
  if (log_eps == -kInf) {
    r.threshold = sign * kInf;
    return r;
  }
  const double z = q_inverse_log(log_eps);
  const double root_n = std::sqrt(static_cast<double>(n));
  const double shift = root_n * std::abs(g->delta) / g->sigma;
  r.threshold = g->mu + sign * g->sigma * z / root_n;
  r.log_beta = log_q_function(shift - z);
  r.log_power = log_q_function(z - shift);
  r.beta = std::exp(r.log_beta);
  r.achieved_alpha = std::exp(log_q_function(z));
  return r;
}

namespace detail {

inline double log_binomial_pmf(long long n, long long k, double log_p, double log_1mp) {
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0) + kd * log_p +
         (nd - kd) * log_1mp;
}

}  // namespace detail

/// Bernoulli Neyman-Pearson. The LLR is monotone in the number of ones, so
/// the optimal test thresholds the binomial count: accept H1 when S > k and
/// with probability gamma when S = k.
inline NPResult np_exact_bernoulli(const DistributionPair& pair, long long n, double log_eps,
                                   NPOptions options = {}) {
  const auto* b = pair.get_if<BernoulliPair>();
  if (b == nullptr) throw UnsupportedFamilyError("np_exact_bernoulli: requires a Bernoulli pair");
  if (n < 1) throw DomainError("np_exact_bernoulli: n must be positive");
  if (std::isnan(log_eps) || log_eps > 0.0) throw DomainError("np_exact_bernoulli: log_eps must be <= 0");

  // Count the symbol whose probability grows under H1.
  const bool ones = b->p1 > b->p0;
  const double q0 = ones ? b->p0 : 1.0 - b->p0;
  const double q1 = ones ? b->p1 : 1.0 - b->p1;
  const double lq0 = std::log(q0), l1q0 = std::log1p(-q0);
  const double lq1 = std::log(q1), l1q1 = std::log1p(-q1);
  const double step_hi = std::log1p((q1 - q0) / q0);          // log(q1/q0) > 0
  const double step_lo = std::log1p((q0 - q1) / (1.0 - q0));  // log((1-q1)/(1-q0)) < 0
  const auto nn = static_cast<std::size_t>(n);

  std::vector<double> m0(nn + 1), m1(nn + 1);
  for (std::size_t s = 0; s <= nn; ++s) {
    m0[s] = detail::log_binomial_pmf(n, static_cast<long long>(s), lq0, l1q0);
    m1[s] = detail::log_binomial_pmf(n, static_cast<long long>(s), lq1, l1q1);
  }
  // gt0[s] = log P0(S > s);  lt1[s] = log P1(S < s)
  std::vector<double> gt0(nn + 1), lt1(nn + 1);
  gt0[nn] = -kInf;
  for (std::size_t s = nn; s-- > 0;) gt0[s] = log_sum_exp(gt0[s + 1], m0[s + 1]);
  lt1[0] = -kInf;
  for (std::size_t s = 1; s <= nn; ++s) lt1[s] = log_sum_exp(lt1[s - 1], m1[s - 1]);

  NPResult r;
  if (log_eps == 0.0) {
    r.beta = 0.0;
    r.log_beta = -kInf;
    r.log_power = 0.0;
    r.threshold = -kInf;
    r.achieved_alpha = 1.0;
    return r;
  }
  // smallest k with P0(S > k) <= eps
  std::size_t k = 0;
  while (gt0[k] > log_eps) ++k;
  const double ge0 = k == 0 ? 0.0 : gt0[k - 1];  // log P0(S >= k) > log_eps

  double log_gamma = -kInf;     // log gamma
  double log_1m_gamma = 0.0;    // log(1 - gamma)
  if (options.randomized && log_eps > -kInf) {
    log_gamma = log_diff_exp(log_eps, gt0[k]) - m0[k];
    log_1m_gamma = log_diff_exp(ge0, log_eps) - m0[k];
  }
  r.randomization = std::exp(log_gamma);
  r.log_beta = log_sum_exp(lt1[k], log_1m_gamma + m1[k]);
  r.beta = std::exp(r.log_beta);
  // 1 - beta = P1(S > k) + gamma P1(S = k)
  double gt1 = -kInf;
  for (std::size_t s = k + 1; s <= nn; ++s) gt1 = log_sum_exp(gt1, m1[s]);
  r.log_power = log_sum_exp(gt1, log_gamma + m1[k]);
  const double kd = static_cast<double>(k);
  r.threshold = kd * step_hi + (static_cast<double>(n) - kd) * step_lo;
  r.achieved_alpha = options.randomized ? std::exp(log_eps) : std::exp(gt0[k]);
  return r;
}

inline constexpr double kBruteForceBudget = 1e7;

/// Exhaustive Neyman-Pearson over the n-fold product of a finite pair.
/// Outcomes are grouped into likelihood-ratio classes (ties merged), sorted by
/// decreasing LR, and the acceptance region is filled greedily up to eps with
/// randomization on the boundary class.
inline NPResult np_exact_discrete_bruteforce(const DistributionPair& pair, int n, double log_eps,
                                             NPOptions options = {}) {
  if (pair.is_gaussian()) throw UnsupportedFamilyError("np_exact_discrete_bruteforce: requires a finite pair");
  if (n < 1) throw DomainError("np_exact_discrete_bruteforce: n must be positive");
  if (std::isnan(log_eps) || log_eps > 0.0) throw DomainError("np_exact_discrete_bruteforce: log_eps must be <= 0");
  const std::size_t k = pair.alphabet_size();
  if (std::pow(static_cast<double>(k), n) > kBruteForceBudget) {
    throw SizeError("np_exact_discrete_bruteforce: |support|^n exceeds 1e7 outcomes");
  }
  std::vector<double> p0(k), p1(k);
  if (const auto* b = pair.get_if<BernoulliPair>()) {
    p0 = {1.0 - b->p0, b->p0};
    p1 = {1.0 - b->p1, b->p1};
  } else {
    const auto& d = std::get<FiniteDiscretePair>(pair.family());
    p0 = d.p0;
    p1 = d.p1;
  }
  std::vector<double> r(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) r[j] = p0[j] > 0.0 ? std::log(p1[j]) - std::log(p0[j]) : 0.0;

  // Enumerate every outcome; outcomes of one type share their LR exactly.
  struct Mass {
    double p0 = 0.0;
    double p1 = 0.0;
  };
  std::map<std::vector<int>, Mass> by_type;
  std::vector<int> symbols(static_cast<std::size_t>(n), 0);
  std::vector<int> counts(k, 0);
  counts[0] = n;
  while (true) {
    double a = 1.0, b = 1.0;
    for (int s : symbols) {
      a *= p0[static_cast<std::size_t>(s)];
      b *= p1[static_cast<std::size_t>(s)];
    }
    if (a > 0.0) {
      Mass& m = by_type[counts];
      m.p0 += a;
      m.p1 += b;
    }
    std::size_t pos = 0;
    while (pos < symbols.size()) {
      --counts[static_cast<std::size_t>(symbols[pos])];
      if (++symbols[pos] < static_cast<int>(k)) {
        ++counts[static_cast<std::size_t>(symbols[pos])];
        break;
      }
      symbols[pos] = 0;
      ++counts[0];
      ++pos;
    }
    if (pos == symbols.size()) break;
  }

  struct LrClass {
    double llr;
    double p0;
    double p1;
  };
  std::vector<LrClass> classes;
  classes.reserve(by_type.size());
  for (const auto& [type, m] : by_type) {
    double llr = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (type[j] != 0) llr += type[j] * r[j];
    }
    classes.push_back({llr, m.p0, m.p1});
  }
  std::sort(classes.begin(), classes.end(), [](const LrClass& x, const LrClass& y) { return x.llr > y.llr; });
  std::vector<LrClass> merged;
  for (const auto& c : classes) {
    if (!merged.empty() && std::abs(merged.back().llr - c.llr) <= 1e-12 * (1.0 + std::abs(c.llr))) {
      merged.back().p0 += c.p0;
      merged.back().p1 += c.p1;
    } else {
      merged.push_back(c);
    }
  }

  const double eps = std::exp(log_eps);
  NPResult res;
  double used = 0.0;
  std::size_t idx = 0;
  while (idx < merged.size() && used + merged[idx].p0 <= eps) used += merged[idx++].p0;
  double gamma = 0.0;
  if (idx < merged.size() && options.randomized) gamma = std::clamp((eps - used) / merged[idx].p0, 0.0, 1.0);
  double beta = 0.0;
  double power = 0.0;
  for (std::size_t j = 0; j < merged.size(); ++j) {
    if (j < idx) power += merged[j].p1;
    if (j > idx) beta += merged[j].p1;
  }
  if (idx < merged.size()) {
    beta += (1.0 - gamma) * merged[idx].p1;
    power += gamma * merged[idx].p1;
    res.threshold = merged[idx].llr;
    res.achieved_alpha = used + gamma * merged[idx].p0;
  } else {
    res.threshold = -kInf;
    res.achieved_alpha = used;
  }
  res.beta = beta;
  res.log_beta = std::log(beta);
  res.log_power = std::log(power);
  res.randomization = gamma;
  return res;
}

/// Dispatches to the exact solver for the pair's family.
inline NPResult np_exact(const DistributionPair& pair, long long n, double log_eps, NPOptions options = {}) {
  if (pair.is_gaussian()) return np_exact_gaussian(pair, n, log_eps);
  if (pair.is_bernoulli()) return np_exact_bernoulli(pair, n, log_eps, options);
  return np_exact_discrete_bruteforce(pair, static_cast<int>(n), log_eps, options);
}

}  // namespace hypotest

#endif  // HYPOTEST_ORACLE_HPP
