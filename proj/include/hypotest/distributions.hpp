#ifndef HYPOTEST_DISTRIBUTIONS_HPP
#define HYPOTEST_DISTRIBUTIONS_HPP

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hypotest/errors.hpp"
#include "hypotest/numerics.hpp"

namespace hypotest {

/// P0 = Bern(p0), P1 = Bern(p1).
struct BernoulliPair {
  double p0;
  double p1;
};

/// P0 = N(mu, sigma^2), P1 = N(mu + delta, sigma^2).
struct GaussianPair {
  double mu;
  double delta;
  double sigma = 1.0;
};

/// P0 and P1 on the finite alphabet {0, ..., k-1}.
struct FiniteDiscretePair {
  std::vector<double> p0;
  std::vector<double> p1;
};

/// Which way a divergence is taken: Forward is D(P0||P1), Reverse is D(P1||P0).
enum class Direction { Forward, Reverse };

/// A validated hypothesis pair. Immutable after construction.
class DistributionPair {
 public:
  using Family = std::variant<BernoulliPair, GaussianPair, FiniteDiscretePair>;

  static DistributionPair bernoulli(double p0, double p1) {
    if (!(p0 > 0.0 && p0 < 1.0 && p1 > 0.0 && p1 < 1.0)) {
      throw DomainError("bernoulli pair: parameters must lie in (0, 1)");
    }
    if (p0 == p1) throw DomainError("bernoulli pair: p0 and p1 must differ");
    return DistributionPair(BernoulliPair{p0, p1});
  }

  static DistributionPair gaussian(double mu, double delta, double sigma = 1.0) {
    if (!std::isfinite(mu) || !std::isfinite(delta) || !std::isfinite(sigma)) {
      throw DomainError("gaussian pair: parameters must be finite");
    }
    if (!(sigma > 0.0)) throw DomainError("gaussian pair: sigma must be positive");
    if (delta == 0.0) throw DomainError("gaussian pair: delta must be non-zero");
    return DistributionPair(GaussianPair{mu, delta, sigma});
  }

  static DistributionPair discrete(std::vector<double> p0, std::vector<double> p1) {
    if (p0.size() != p1.size()) throw DomainError("discrete pair: vectors differ in length");
    if (p0.size() < 2) throw DomainError("discrete pair: support must have at least 2 symbols");
    double s0 = 0.0;
    double s1 = 0.0;
    for (std::size_t i = 0; i < p0.size(); ++i) {
      if (!(p0[i] >= 0.0 && p1[i] >= 0.0) || !std::isfinite(p0[i]) || !std::isfinite(p1[i])) {
        throw DomainError("discrete pair: probabilities must be finite and non-negative");
      }
      if ((p0[i] > 0.0) != (p1[i] > 0.0)) {
        throw DomainError("discrete pair: P0 and P1 must be mutually absolutely continuous");
      }
      s0 += p0[i];
      s1 += p1[i];
    }
    if (std::abs(s0 - 1.0) > 1e-12 || std::abs(s1 - 1.0) > 1e-12) {
      throw DomainError("discrete pair: each vector must sum to 1");
    }
    return DistributionPair(FiniteDiscretePair{std::move(p0), std::move(p1)});
  }

  const Family& family() const noexcept { return family_; }

  template <typename T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&family_);
  }

  bool is_gaussian() const noexcept { return std::holds_alternative<GaussianPair>(family_); }
  bool is_bernoulli() const noexcept { return std::holds_alternative<BernoulliPair>(family_); }
  bool is_discrete() const noexcept { return std::holds_alternative<FiniteDiscretePair>(family_); }

  /// Support size for Bernoulli / discrete pairs; 0 for continuous families.
  std::size_t alphabet_size() const noexcept {
    if (is_bernoulli()) return 2;
    if (const auto* d = get_if<FiniteDiscretePair>()) return d->p0.size();
    return 0;
  }

 private:
  explicit DistributionPair(Family f) : family_(std::move(f)) {}
  Family family_;
};

namespace detail {

// Per-symbol view of a finite pair: masses and the log ratio r = log(p1/p0),
// with r formed as log1p of a relative difference so near-identical pairs
// keep full precision. Symbols with zero mass are dropped.
struct FiniteView {
  std::vector<double> p0;
  std::vector<double> p1;
  std::vector<double> llr;  // log(p1/p0)
};

inline FiniteView finite_view(const DistributionPair& pair) {
  FiniteView v;
  auto push = [&v](double a, double b, double diff) {
    if (a == 0.0) return;
    v.p0.push_back(a);
    v.p1.push_back(b);
    v.llr.push_back(std::log1p(diff / a));
  };
  if (const auto* b = pair.get_if<BernoulliPair>()) {
    const double d = b->p1 - b->p0;
    push(1.0 - b->p0, 1.0 - b->p1, -d);
    push(b->p0, b->p1, d);
  } else if (const auto* f = pair.get_if<FiniteDiscretePair>()) {
    for (std::size_t i = 0; i < f->p0.size(); ++i) push(f->p0[i], f->p1[i], f->p1[i] - f->p0[i]);
  } else {
    throw UnsupportedFamilyError("finite view requested for a continuous family");
  }
  return v;
}

// Standardized Gaussian shift (delta / sigma)^2.
inline double gaussian_snr(const GaussianPair& g) {
  const double s = g.delta / g.sigma;
  return s * s;
}

}  // namespace detail

/// KL divergence in nats.
inline double kl_divergence(const DistributionPair& pair, Direction dir) {
  if (const auto* g = pair.get_if<GaussianPair>()) return 0.5 * detail::gaussian_snr(*g);
  const auto v = detail::finite_view(pair);
  double acc = 0.0;
  for (std::size_t i = 0; i < v.llr.size(); ++i) {
    // Forward: sum p0 log(p0/p1) = -sum p0 r;  Reverse: sum p1 r
    acc += dir == Direction::Forward ? -v.p0[i] * v.llr[i] : v.p1[i] * v.llr[i];
  }
  return std::max(acc, 0.0);
}

/// Single-letter Renyi divergence of order lambda (lambda > 0, lambda != 1).
/// The n-fold product divergence is n times this value.
inline double renyi_divergence(const DistributionPair& pair, double lambda, Direction dir) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("renyi_divergence: lambda must be positive");
  if (lambda == 1.0) throw DomainError("renyi_divergence: lambda = 1 is the KL divergence");
  if (const auto* g = pair.get_if<GaussianPair>()) return 0.5 * lambda * detail::gaussian_snr(*g);

  // D_l(P||Q) = 1/(l-1) log sum q exp(l r), r = log(p/q)
  const auto v = detail::finite_view(pair);
  const std::size_t k = v.llr.size();
  std::vector<double> q(k);
  std::vector<double> r(k);
  double max_abs = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    q[i] = dir == Direction::Forward ? v.p1[i] : v.p0[i];
    r[i] = dir == Direction::Forward ? -v.llr[i] : v.llr[i];
    max_abs = std::max(max_abs, std::abs(lambda * r[i]));
  }
  double log_mass;
  if (max_abs <= 0.5) {
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) acc += q[i] * std::expm1(lambda * r[i]);
    log_mass = std::log1p(acc);
  } else {
    std::vector<double> terms(k);
    for (std::size_t i = 0; i < k; ++i) terms[i] = std::log(q[i]) + lambda * r[i];
    log_mass = log_sum_exp(terms);
  }
  return log_mass / (lambda - 1.0);
}

/// Squared Hellinger distance 1 - integral sqrt(p0 p1), in [0, 1].
inline double hellinger_squared(const DistributionPair& pair) {
  if (const auto* g = pair.get_if<GaussianPair>()) return -std::expm1(-detail::gaussian_snr(*g) / 8.0);
  const auto v = detail::finite_view(pair);
  double acc = 0.0;
  for (std::size_t i = 0; i < v.p0.size(); ++i) {
    const double d = std::sqrt(v.p0[i]) - std::sqrt(v.p1[i]);
    acc += d * d;
  }
  return std::clamp(0.5 * acc, 0.0, 1.0);
}

/// Per-sample moments of log(p0(X)/p1(X)) under P0.
struct LLRMoments {
  double mean;               // D(P0||P1)
  double variance;           // V
  double third_abs_central;  // T
  double berry_constant;     // B = 6 T / V^{3/2}; +inf when V = 0
};

inline LLRMoments llr_moments(const DistributionPair& pair) {
  if (const auto* g = pair.get_if<GaussianPair>()) {
    const double snr = detail::gaussian_snr(*g);
    const double s = std::sqrt(snr);
    const double t = s * s * s * std::sqrt(8.0 / std::numbers::pi);
    return {0.5 * snr, snr, t, 6.0 * std::sqrt(8.0 / std::numbers::pi)};
  }
  const auto v = detail::finite_view(pair);
  double mean = 0.0;
  for (std::size_t i = 0; i < v.p0.size(); ++i) mean -= v.p0[i] * v.llr[i];
  double var = 0.0;
  double third = 0.0;
  for (std::size_t i = 0; i < v.p0.size(); ++i) {
    const double c = std::abs(-v.llr[i] - mean);
    var += v.p0[i] * c * c;
    third += v.p0[i] * c * c * c;
  }
  const double b = var > 0.0 ? 6.0 * third / std::pow(var, 1.5) : kInf;
  return {mean, var, third, b};
}

/// log(p1(x)/p0(x)) for one observation. For finite families x is the
/// symbol index.
inline double log_density_ratio(const DistributionPair& pair, double x) {
  if (!std::isfinite(x)) throw DomainError("log_density_ratio: observation must be finite");
  if (const auto* g = pair.get_if<GaussianPair>()) {
    return g->delta / (g->sigma * g->sigma) * (x - g->mu - 0.5 * g->delta);
  }
  const double idx = std::floor(x);
  if (idx != x || x < 0.0 || x >= static_cast<double>(pair.alphabet_size())) {
    throw DomainError("log_density_ratio: observation outside the support");
  }
  const auto i = static_cast<std::size_t>(idx);
  if (const auto* b = pair.get_if<BernoulliPair>()) {
    return i == 1 ? std::log1p((b->p1 - b->p0) / b->p0) : std::log1p((b->p0 - b->p1) / (1.0 - b->p0));
  }
  const auto& d = std::get<FiniteDiscretePair>(pair.family());
  if (d.p0[i] == 0.0) throw DomainError("log_density_ratio: observation outside the support");
  return std::log1p((d.p1[i] - d.p0[i]) / d.p0[i]);
}

// ---------------------------------------------------------------------------
// Textual pair specs: "bernoulli:p0,p1" | "gaussian:mu,delta[,sigma]" |
// "discrete:p,p,...|q,q,..."
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<double> parse_number_list(std::string_view text, std::size_t base, char sep) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) throw ParseError("expected a number", base + pos);
    out.push_back(value);
    pos = static_cast<std::size_t>(ptr - text.data());
    if (pos == text.size()) break;
    if (text[pos] != sep) throw ParseError(std::string("expected '") + sep + "'", base + pos);
    ++pos;
  }
  return out;
}

}  // namespace detail

inline DistributionPair parse_pair(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("pair spec needs '<family>:<params>'", text.size());
  const std::string_view family = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  const std::size_t base = colon + 1;
  try {
    if (family == "bernoulli") {
      const auto v = detail::parse_number_list(rest, base, ',');
      if (v.size() != 2) throw ParseError("bernoulli takes p0,p1", base);
      return DistributionPair::bernoulli(v[0], v[1]);
    }
    if (family == "gaussian") {
      const auto v = detail::parse_number_list(rest, base, ',');
      if (v.size() != 2 && v.size() != 3) throw ParseError("gaussian takes mu,delta[,sigma]", base);
      return DistributionPair::gaussian(v[0], v[1], v.size() == 3 ? v[2] : 1.0);
    }
    if (family == "discrete") {
      const auto bar = rest.find('|');
      if (bar == std::string_view::npos) throw ParseError("discrete takes p-list|q-list", text.size());
      auto p = detail::parse_number_list(rest.substr(0, bar), base, ',');
      auto q = detail::parse_number_list(rest.substr(bar + 1), base + bar + 1, ',');
      return DistributionPair::discrete(std::move(p), std::move(q));
    }
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid pair: ") + e.what(), base);
  }
  throw ParseError("unknown family '" + std::string(family) + "'", 0);
}

/// Canonical textual spec, the inverse of parse_pair.
inline std::string format_pair(const DistributionPair& pair) {
  auto num = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  if (const auto* b = pair.get_if<BernoulliPair>()) return "bernoulli:" + num(b->p0) + "," + num(b->p1);
  if (const auto* g = pair.get_if<GaussianPair>()) {
    return "gaussian:" + num(g->mu) + "," + num(g->delta) + "," + num(g->sigma);
  }
  const auto& d = std::get<FiniteDiscretePair>(pair.family());
  std::string s = "discrete:";
  for (std::size_t i = 0; i < d.p0.size(); ++i) s += (i ? "," : "") + num(d.p0[i]);
  s += "|";
  for (std::size_t i = 0; i < d.p1.size(); ++i) s += (i ? "," : "") + num(d.p1[i]);
  return s;
}

}  // namespace hypotest

#endif  // HYPOTEST_DISTRIBUTIONS_HPP
