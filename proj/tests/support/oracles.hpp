#ifndef HYPOTEST_TESTS_ORACLES_HPP
#define HYPOTEST_TESTS_ORACLES_HPP

// Reference computations used to check the library. Nothing here calls into
// the numerics the library uses for the same quantity.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_50;

/// Upper Gaussian tail by exp-sinh quadrature of the density over [x, inf).
inline double quad_q(double x) {
  using boost::math::quadrature::exp_sinh;
  exp_sinh<long double> integrator;
  const long double c = 1.0L / std::sqrt(2.0L * 3.14159265358979323846264338327950288L);
  if (x >= 0.0) {
    auto f = [&](long double t) { return c * std::exp(-0.5L * t * t); };
    return static_cast<double>(integrator.integrate(f, static_cast<long double>(x),
                                                    std::numeric_limits<long double>::infinity()));
  }
  auto f = [&](long double t) { return c * std::exp(-0.5L * t * t); };
  const long double upper = integrator.integrate(f, static_cast<long double>(-x),
                                                 std::numeric_limits<long double>::infinity());
  return static_cast<double>(1.0L - upper);
}

/// Inverse of quad_q by bisection.
inline double quad_q_inverse(double p) {
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (quad_q(mid) > p) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline Big big(double x) { return Big(x); }

/// D_lambda(P||Q) for finite vectors in 50-digit arithmetic.
inline double renyi(const std::vector<double>& p, const std::vector<double>& q, double lambda) {
  Big acc = 0;
  const Big l(lambda);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    acc += boost::multiprecision::pow(big(p[i]), l) * boost::multiprecision::pow(big(q[i]), Big(1) - l);
  }
  return static_cast<double>(boost::multiprecision::log(acc) / (l - 1));
}

inline double kl(const std::vector<double>& p, const std::vector<double>& q) {
  Big acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    acc += big(p[i]) * boost::multiprecision::log(big(p[i]) / big(q[i]));
  }
  return static_cast<double>(acc);
}

inline double hellinger2(const std::vector<double>& p, const std::vector<double>& q) {
  Big acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Big d = boost::multiprecision::sqrt(big(p[i])) - boost::multiprecision::sqrt(big(q[i]));
    acc += d * d;
  }
  return static_cast<double>(acc / 2);
}

/// Mean and variance of log(p0/p1) under p0.
inline std::pair<double, double> llr_mean_var(const std::vector<double>& p0, const std::vector<double>& p1) {
  Big m = 0;
  for (std::size_t i = 0; i < p0.size(); ++i) m += big(p0[i]) * boost::multiprecision::log(big(p0[i]) / big(p1[i]));
  Big v = 0;
  for (std::size_t i = 0; i < p0.size(); ++i) {
    const Big d = boost::multiprecision::log(big(p0[i]) / big(p1[i])) - m;
    v += big(p0[i]) * d * d;
  }
  return {static_cast<double>(m), static_cast<double>(v)};
}

/// n-fold product of a finite distribution, outcomes in lexicographic order.
inline std::vector<double> product(const std::vector<double>& p, int n) {
  std::vector<double> out{1.0};
  for (int r = 0; r < n; ++r) {
    std::vector<double> next;
    next.reserve(out.size() * p.size());
    for (double a : out)
      for (double b : p) next.push_back(a * b);
    out.swap(next);
  }
  return out;
}

/// Randomized NP for Bernoulli by enumerating counts in 50-digit arithmetic.
inline double bernoulli_np_beta(double p0, double p1, int n, double eps) {
  using boost::multiprecision::pow;
  std::vector<Big> m0(n + 1), m1(n + 1);
  Big binom = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) binom = binom * (n - k + 1) / k;
    m0[k] = binom * pow(big(p0), k) * pow(Big(1) - big(p0), n - k);
    m1[k] = binom * pow(big(p1), k) * pow(Big(1) - big(p1), n - k);
  }
  // classes sorted by decreasing LR: counts descending when p1 > p0
  std::vector<int> order(n + 1);
  for (int k = 0; k <= n; ++k) order[k] = p1 > p0 ? n - k : k;
  Big used = 0, power = 0;
  const Big budget = big(eps);
  for (int k : order) {
    if (used + m0[k] <= budget) {
      used += m0[k];
      power += m1[k];
    } else {
      power += (budget - used) / m0[k] * m1[k];
      break;
    }
  }
  return static_cast<double>(Big(1) - power);
}

/// Maximum of f over a bracket by a 10^4-point scan followed by one 10^4-point
/// zoom around the best scan cell. Unbounded brackets (hi = inf) are scanned
/// log-spaced in the offset from lo up to 1e6; bounded ones logit-spaced.
inline double grid_max(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-9,
                       int points = 10000) {
  std::vector<double> xs(points);
  if (std::isinf(hi)) {
    const double a = std::log(tol), b = std::log(1e6);
    for (int i = 0; i < points; ++i) xs[i] = lo + std::exp(a + (b - a) * i / (points - 1));
  } else {
    const double w = hi - lo;
    const double u = tol / w;
    const double s0 = std::log(u / (1 - u));
    for (int i = 0; i < points; ++i) {
      const double s = s0 + (-2 * s0) * i / (points - 1);
      xs[i] = lo + w / (1 + std::exp(-s));
    }
  }
  auto safe = [&](double x) {
    const double v = f(x);
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
  };
  std::size_t best = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = safe(xs[i]);
    if (v > best_v) { best_v = v; best = i; }
  }
  const double a = xs[best == 0 ? 0 : best - 1];
  const double b = xs[std::min<std::size_t>(best + 1, xs.size() - 1)];
  for (int i = 0; i < points; ++i) best_v = std::max(best_v, safe(a + (b - a) * i / (points - 1)));
  return best_v;
}

/// Random probability vector of length k with entries bounded away from 0.
inline std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t k, double floor = 0.02) {
  std::uniform_real_distribution<double> u(floor, 1.0);
  std::vector<double> p(k);
  double s = 0;
  for (auto& x : p) { x = u(rng); s += x; }
  for (auto& x : p) x /= s;
  // push the rounding residue into the largest entry
  double t = 0;
  for (double x : p) t += x;
  *std::max_element(p.begin(), p.end()) += 1.0 - t;
  return p;
}

}  // namespace oracle

#endif
