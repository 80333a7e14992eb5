#include <gtest/gtest.h>

#include <random>

#include "hypotest/oracle.hpp"
#include "support/oracles.hpp"

using namespace hypotest;

namespace {
const auto kGauss = DistributionPair::gaussian(2.0, 0.05, 1.0);
}

TEST(NPGaussian, Example) {
  const auto r = np_exact_gaussian(kGauss, 100, std::log(0.01));
  EXPECT_NEAR(r.threshold, 2.2326348, 1e-6);
  EXPECT_NEAR(r.beta, 0.966104, 1e-5);
  EXPECT_NEAR(r.beta, 1 - oracle::quad_q(oracle::quad_q_inverse(0.01) - 0.5), 1e-10);
  EXPECT_NEAR(r.achieved_alpha, 0.01, 1e-12);
  EXPECT_EQ(r.randomization, 0.0);
}

TEST(NPGaussian, LimitsAndMirror) {
  const auto tiny = DistributionPair::gaussian(0.0, 1e-9);
  EXPECT_NEAR(np_exact_gaussian(tiny, 10, std::log(0.2)).beta, 0.8, 1e-8);
  const auto med = np_exact_gaussian(kGauss, 400, std::log(0.5));
  EXPECT_NEAR(med.threshold, 2.0, 1e-12);
  EXPECT_NEAR(med.beta, oracle::quad_q(1.0), 1e-12);
  const auto neg = np_exact_gaussian(DistributionPair::gaussian(2.0, -0.05), 100, std::log(0.01));
  EXPECT_NEAR(neg.beta, np_exact_gaussian(kGauss, 100, std::log(0.01)).beta, 1e-15);
  EXPECT_NEAR(neg.threshold, 2.0 - 0.2326348, 1e-6);
  EXPECT_THROW(np_exact_gaussian(DistributionPair::bernoulli(0.2, 0.3), 1, -1), UnsupportedFamilyError);
}

TEST(NPGaussian, UnderflowRegimeKeepsLogPower) {
  const auto r = np_exact_gaussian(kGauss, 100000, -2500.0);
  EXPECT_EQ(r.beta, 1.0);
  EXPECT_TRUE(std::isfinite(r.log_power));
  EXPECT_LT(r.log_power, -100.0);
}

TEST(NPBernoulli, SingleSample) {
  const auto pair = DistributionPair::bernoulli(0.5, 0.51);
  const auto r = np_exact_bernoulli(pair, 1, std::log(0.5));
  EXPECT_NEAR(r.beta, 0.49, 1e-15);
  EXPECT_NEAR(r.achieved_alpha, 0.5, 1e-15);
  EXPECT_EQ(np_exact_bernoulli(pair, 5, 0.0).beta, 0.0);
}

TEST(NPBernoulli, MatchesExtendedEnumeration) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.05, 0.95), le(-12.0, -0.01);
  for (int rep = 0; rep < 40; ++rep) {
    const double p0 = u(rng), p1 = u(rng);
    const int n = 1 + rep * 5;
    const double log_eps = le(rng);
    const auto r = np_exact_bernoulli(DistributionPair::bernoulli(p0, p1), n, log_eps);
    EXPECT_NEAR(r.beta, oracle::bernoulli_np_beta(p0, p1, n, std::exp(log_eps)), 1e-12) << p0 << " " << p1;
  }
}

TEST(NPBernoulli, DeterministicVariantIsWorse) {
  const auto pair = DistributionPair::bernoulli(0.5, 0.6);
  const auto rnd = np_exact_bernoulli(pair, 20, std::log(0.05));
  const auto det = np_exact_bernoulli(pair, 20, std::log(0.05), {.randomized = false});
  EXPECT_GE(det.beta, rnd.beta);
  EXPECT_LE(det.achieved_alpha, 0.05);
  EXPECT_EQ(det.randomization, 0.0);
}

TEST(NPBruteForce, MatchesBernoulli) {
  const auto d = DistributionPair::discrete({0.5, 0.5}, {0.49, 0.51});
  const auto b = DistributionPair::bernoulli(0.5, 0.51);
  EXPECT_NEAR(np_exact_discrete_bruteforce(d, 10, std::log(0.01)).beta,
              np_exact_bernoulli(b, 10, std::log(0.01)).beta, 1e-12);
}

TEST(NPBruteForce, Boundaries) {
  const auto d = DistributionPair::discrete({0.2, 0.3, 0.5}, {0.4, 0.4, 0.2});
  EXPECT_NEAR(np_exact_discrete_bruteforce(d, 4, -kInf).beta, 1.0, 1e-12);
  const auto same = DistributionPair::discrete({0.2, 0.3, 0.5}, {0.2, 0.3, 0.5});
  EXPECT_NEAR(np_exact_discrete_bruteforce(same, 5, std::log(0.3)).beta, 0.7, 1e-12);
  EXPECT_THROW(np_exact_discrete_bruteforce(d, 16, -1.0), SizeError);
  EXPECT_THROW(np_exact_discrete_bruteforce(kGauss, 2, -1.0), UnsupportedFamilyError);
}

TEST(NPBruteForce, BeatsRandomFeasibleTests) {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 5; ++rep) {
    const auto p = oracle::random_simplex(rng, 3);
    const auto q = oracle::random_simplex(rng, 3);
    const int n = 3 + rep % 3;
    const double eps = 0.1;
    const double beta = np_exact_discrete_bruteforce(DistributionPair::discrete(p, q), n, std::log(eps)).beta;
    const auto pn = oracle::product(p, n), qn = oracle::product(q, n);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 2000; ++t) {
      std::vector<double> phi(pn.size());
      double a = 0;
      for (std::size_t i = 0; i < pn.size(); ++i) {
        phi[i] = u(rng) < 0.3 ? u(rng) : 0.0;
        a += phi[i] * pn[i];
      }
      const double scale = a > eps ? eps / a : 1.0;
      double b = 0;
      for (std::size_t i = 0; i < pn.size(); ++i) b += (1 - phi[i] * scale) * qn[i];
      EXPECT_LE(beta, b + 1e-12);
    }
  }
}

TEST(NPOracle, MonotoneInEps) {
  const std::vector<DistributionPair> pairs = {kGauss, DistributionPair::bernoulli(0.3, 0.35),
                                               DistributionPair::discrete({0.2, 0.8}, {0.5, 0.5})};
  for (const auto& pair : pairs) {
    double prev = 1.0;
    for (double le = -20; le <= 0; le += 0.25) {
      const auto r = np_exact(pair, 8, le);
      EXPECT_LE(r.beta, prev + 1e-15);
      EXPECT_LE(r.achieved_alpha, std::exp(le) + 1e-12);
      if (pair.is_gaussian() && le < 0) {
        EXPECT_NEAR(r.achieved_alpha, std::exp(le), 1e-12 + 1e-9 * std::exp(le));
      }
      prev = r.beta;
    }
  }
}
