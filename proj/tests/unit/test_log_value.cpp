#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mgflab/log_value.hpp"

using mgflab::LogValue;

TEST(LogValue, ZeroAndDivergentTags) {
  EXPECT_TRUE(LogValue::from_linear(0.0).is_zero());
  EXPECT_TRUE(LogValue::from_log(-INFINITY).is_zero());
  EXPECT_TRUE(LogValue::from_log(INFINITY).is_divergent());
  EXPECT_FALSE(LogValue::from_log(-1e300).is_zero());
  EXPECT_THROW(LogValue::divergent().log(), std::domain_error);
  EXPECT_THROW(LogValue::divergent().linear(), std::overflow_error);
  EXPECT_EQ(LogValue::zero().linear(), 0.0);
}

TEST(LogValue, RejectsNanAndNegative) {
  EXPECT_THROW(LogValue::from_log(NAN), std::domain_error);
  EXPECT_THROW(LogValue::from_linear(-1.0), std::domain_error);
  EXPECT_THROW(LogValue::from_linear(NAN), std::domain_error);
}

TEST(LogValue, LinearCap) {
  EXPECT_NEAR(LogValue::from_log(2.0).linear(), std::exp(2.0), 1e-12);
  EXPECT_THROW(LogValue::from_log(1240.0).linear(), std::overflow_error);
  EXPECT_NO_THROW(LogValue::from_log(1240.0).log());
}

TEST(LogValue, ArithmeticRules) {
  const LogValue a = LogValue::from_linear(3.0), b = LogValue::from_linear(5.0);
  EXPECT_NEAR((a + b).log(), std::log(8.0), 1e-15);
  EXPECT_NEAR((a * b).log(), std::log(15.0), 1e-15);
  EXPECT_NEAR((b / a).log(), std::log(5.0 / 3.0), 1e-15);
  EXPECT_EQ(a + LogValue::zero(), a);
  EXPECT_TRUE((a * LogValue::zero()).is_zero());
  EXPECT_TRUE((a + LogValue::divergent()).is_divergent());
  EXPECT_TRUE((a * LogValue::divergent()).is_divergent());
  EXPECT_THROW(LogValue::zero() * LogValue::divergent(), std::domain_error);
  EXPECT_THROW(a / LogValue::zero(), std::domain_error);
}

TEST(LogValue, HugeMagnitudesStayExact) {
  const LogValue a = LogValue::from_log(1000.0), b = LogValue::from_log(1001.0);
  EXPECT_NEAR((a + b).log(), 1001.0 + std::log1p(std::exp(-1.0)), 1e-12);
  EXPECT_NEAR((a * b).log(), 2001.0, 1e-12);
}

TEST(LogValue, AssociativeAndCommutativeWithinTolerance) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-50.0, 50.0);
  for (int i = 0; i < 500; ++i) {
    const LogValue a = LogValue::from_log(U(rng)), b = LogValue::from_log(U(rng)), c = LogValue::from_log(U(rng));
    const double s1 = ((a + b) + c).log(), s2 = (a + (b + c)).log(), s3 = ((c + a) + b).log();
    EXPECT_NEAR(s1, s2, 1e-13 * std::max(1.0, std::abs(s1)));
    EXPECT_NEAR(s1, s3, 1e-13 * std::max(1.0, std::abs(s1)));
    EXPECT_NEAR(((a * b) * c).log(), (a * (b * c)).log(), 1e-12);
    EXPECT_EQ((a + b).log(), (b + a).log());
  }
}

TEST(LogSum, MatchesPairwiseAndHandlesEmpty) {
  const std::vector<double> t{std::log(1.0), std::log(2.0), std::log(3.0)};
  EXPECT_NEAR(mgflab::log_sum(t), std::log(6.0), 1e-15);
  EXPECT_EQ(mgflab::log_sum({}), -INFINITY);
  EXPECT_NEAR(mgflab::log_add(std::log(2.0), -INFINITY), std::log(2.0), 0.0);
}
