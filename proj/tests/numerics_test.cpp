#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "hypotest/numerics.hpp"
#include "support/oracles.hpp"

using namespace hypotest;

TEST(QFunction, MatchesQuadrature) {
  EXPECT_DOUBLE_EQ(q_function(0.0), 0.5);
  EXPECT_NEAR(q_function(2.326348), 0.01, 1e-6);
  EXPECT_NEAR(q_function(1.82635), 0.033896, 1e-5);
  for (double x : {-6.0, -2.5, -0.3, 0.7, 1.82635, 2.326348, 4.0, 7.5}) {
    EXPECT_NEAR(q_function(x), oracle::quad_q(x), 1e-13 + 1e-10 * oracle::quad_q(x)) << x;
  }
}

TEST(QFunction, SymmetryAndMonotone) {
  double prev = 1.0;
  for (double x = -8.0; x <= 8.0; x += 0.01) {
    EXPECT_NEAR(q_function(x) + q_function(-x), 1.0, 1e-14);
    const double q = q_function(x);
    if (x > 0.0) {
      EXPECT_LT(q, prev);
    } else {
      EXPECT_LE(q, prev);
    }
    prev = q;
  }
}

TEST(QFunction, RejectsNonFinite) {
  EXPECT_THROW(q_function(kNaN), DomainError);
  EXPECT_THROW(q_function(kInf), DomainError);
}

TEST(LogQFunction, DeepTail) {
  // log Q(x) ~ -x^2/2 - log(x sqrt(2 pi)) - 1/x^2
  for (double x : {40.0, 100.0, 1000.0}) {
    const double approx = -0.5 * x * x - std::log(x) - kLogSqrt2Pi - 1.0 / (x * x) + 2.5 / std::pow(x, 4);
    EXPECT_NEAR(log_q_function(x), approx, 1e-9 * std::abs(approx));
  }
  // continuity across the switch to the series
  EXPECT_NEAR(log_q_function(37.0 - 1e-9), log_q_function(37.0 + 1e-9), 1e-6);
  EXPECT_NEAR(log_q_function(-10.0), std::log1p(-oracle::quad_q(10.0)), 1e-15);
}

TEST(QInverse, Examples) {
  EXPECT_DOUBLE_EQ(q_inverse(0.5), 0.0);
  EXPECT_NEAR(q_inverse(0.01), 2.326348, 1e-5);
  EXPECT_NEAR(q_inverse(0.01), oracle::quad_q_inverse(0.01), 1e-9);
  for (double x : {-3.0, -1.0, 0.0, 1.0, 3.0}) EXPECT_NEAR(q_inverse(q_function(x)), x, 1e-9);
}

TEST(QInverse, LogDomainTail) {
  for (double x : {5.0, 20.0, 50.0, 300.0}) {
    EXPECT_NEAR(q_inverse_log(log_q_function(x)), x, 1e-9 * x);
  }
  EXPECT_GT(q_inverse_log(-2500.0), 70.0);
}

TEST(QInverse, RejectsOutOfRange) {
  EXPECT_THROW(q_inverse(0.0), DomainError);
  EXPECT_THROW(q_inverse(1.0), DomainError);
  EXPECT_THROW(q_inverse(-0.2), DomainError);
  EXPECT_THROW(q_inverse_log(0.0), DomainError);
}

TEST(LogSumExp, Examples) {
  EXPECT_NEAR(log_sum_exp(std::vector<double>{0.0, 0.0}), std::log(2.0), 1e-15);
  EXPECT_NEAR(log_sum_exp(std::vector<double>{-1000.0, -1000.0}), -1000.0 + std::log(2.0), 1e-12);
  EXPECT_EQ(log_sum_exp(std::vector<double>{0.0, -kInf}), 0.0);
  EXPECT_THROW(log_sum_exp(std::vector<double>{}), DomainError);
}

TEST(LogSumExp, AgreesWithNaive) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> xs(1 + rep % 7);
    double naive = 0.0;
    for (auto& x : xs) {
      x = u(rng);
      naive += std::exp(x);
    }
    EXPECT_NEAR(log_sum_exp(xs), std::log(naive), 1e-12 * std::max(1.0, std::abs(std::log(naive))));
  }
}

TEST(LogHelpers, DiffAndComplement) {
  EXPECT_NEAR(log1mexp(-1e-20), std::log(1e-20), 1e-12);
  EXPECT_NEAR(log1mexp(-50.0), -std::exp(-50.0), 1e-30);
  EXPECT_EQ(log1mexp(0.0), -kInf);
  EXPECT_NEAR(log_diff_exp(std::log(5.0), std::log(3.0)), std::log(2.0), 1e-15);
  EXPECT_EQ(log_diff_exp(1.0, 1.0), -kInf);
}

TEST(Bracket, Invariants) {
  EXPECT_THROW(Bracket(1.0, 1.0), DomainError);
  EXPECT_THROW(Bracket(2.0, 1.0), DomainError);
  EXPECT_THROW(Bracket(0.0, 1.0, 0.0), DomainError);
  EXPECT_NO_THROW(Bracket(1.0, kInf));
}

TEST(MaximizeScalar, Quadratic) {
  const auto r = maximize_scalar([](double l) { return -(l - 3) * (l - 3); }, Bracket(1.0, 100.0));
  EXPECT_NEAR(r.arg, 3.0, 1e-6);
  EXPECT_NEAR(r.value, 0.0, 1e-6);
}

TEST(MaximizeScalar, GaussianExponent) {
  const double c = 0.025, d = 0.00125;
  const auto r = maximize_scalar([&](double l) { return (1 - 1 / l) * (c - l * d); }, Bracket(1.0, kInf));
  EXPECT_NEAR(r.arg, std::sqrt(c / d), 1e-6);
  EXPECT_NEAR(r.value, std::pow(std::sqrt(c) - std::sqrt(d), 2), 1e-8);
}

TEST(MaximizeScalar, BoundarySupremum) {
  const auto r = maximize_scalar([](double l) { return -l; }, Bracket(1.0, kInf));
  EXPECT_DOUBLE_EQ(r.arg, 1.0 + 1e-9);
}

TEST(MaximizeScalar, BeatsRandomPoints) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    std::uniform_real_distribution<double> coef(0.5, 5.0);
    const double a = coef(rng), b = coef(rng), w = coef(rng);
    auto f = [&](double x) { return std::sin(w * x) * a - b * (x - 2) * (x - 2) / 10; };
    const Bracket br(0.0, 6.0);
    const auto r = maximize_scalar(f, br);
    std::uniform_real_distribution<double> pick(0.0, 6.0);
    for (int i = 0; i < 10000; ++i) EXPECT_GE(r.value, f(pick(rng)) - 1e-12);
  }
}

TEST(MaximizeScalar, MostlyNonFiniteThrows) {
  auto f = [](double x) { return x < 0.2 ? -x : kNaN; };
  try {
    maximize_scalar(f, Bracket(0.0, 1.0));
    FAIL() << "expected OptimizationError";
  } catch (const OptimizationError& e) {
    EXPECT_TRUE(std::isfinite(e.last_finite_value()));
    EXPECT_LE(e.last_finite_value(), 0.0);
  }
}
