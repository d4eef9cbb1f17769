#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "twosphere/error.hpp"
#include "twosphere/fit.hpp"

using namespace twosphere;

namespace {
double rate(double e) { return 1.0 / (e * std::abs(std::log(e))); }
const std::vector<double> kGrid{0.2, 0.1, 0.05, 0.02, 0.01, 0.005};
}  // namespace

TEST(Fit, ExactRateIsRecovered) {
  std::vector<double> v;
  for (double e : kGrid) v.push_back(3.0 * rate(e));
  const AsymptoticFit f = asymptotic_model(kGrid, v);
  EXPECT_NEAR(f.a, 3.0, 1e-10);
  EXPECT_NEAR(f.b, 0.0, 1e-9);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
  EXPECT_NEAR(f.compensated_ratio, 1.0, 1e-12);
  ASSERT_EQ(f.compensated.size(), kGrid.size());
}

TEST(Fit, NoisyRateWithinThreePercent) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> noise(0.0, 0.01);
  int within = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> v;
    for (double e : kGrid) v.push_back(3.0 * rate(e) * (1.0 + noise(rng)));
    within += std::abs(asymptotic_model(kGrid, v).a - 3.0) <= 0.09 ? 1 : 0;
  }
  EXPECT_GE(within, trials * 95 / 100);
}

TEST(Fit, DegenerateInputs) {
  EXPECT_THROW(asymptotic_model({0.1, 0.05, 0.02}, {1, 2, 3}), Error);
  try {
    asymptotic_model({0.1, 0.08, 0.05, 0.02}, {1, 2, 3, 4});
    FAIL() << "expected DegenerateFit";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateFit);
  }
}
