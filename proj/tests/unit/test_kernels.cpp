#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "twosphere/kernels.hpp"

using namespace twosphere;

namespace {
constexpr double kFourPi = 4.0 * std::numbers::pi;
}

TEST(Kernels, StaticAndLinearValues) {
  EXPECT_NEAR(gamma(KernelOrder::static0(), Vec3(1, 0, 0)).real(), -1.0 / kFourPi, 1e-16);
  const cdouble g1 = gamma(KernelOrder::linear1(), Vec3(0.3, 2, -1));
  EXPECT_NEAR(g1.real(), 0.0, 1e-16);
  EXPECT_NEAR(g1.imag(), -1.0 / kFourPi, 1e-16);
  EXPECT_NEAR(gamma(KernelOrder::quadratic2(), Vec3(0, 2, 0)).real(), 2.0 / (2.0 * kFourPi), 1e-16);
}

TEST(Kernels, Gradients) {
  EXPECT_EQ(grad_gamma(KernelOrder::linear1(), Vec3(1, 2, 3)), CVec3::Zero());
  const CVec3 g = grad_gamma(KernelOrder::static0(), Vec3(1, 0, 0));
  EXPECT_NEAR(g[0].real(), 1.0 / kFourPi, 1e-16);
  EXPECT_NEAR(std::abs(g[1]) + std::abs(g[2]), 0.0, 1e-16);

  const KernelOrder full = KernelOrder::full(0.1);
  const Vec3 x = Vec3(0.3, -0.2, 0.35).normalized() * 0.5;
  const double h = 1e-6;
  const CVec3 an = grad_gamma(full, x);
  CVec3 fd;
  for (int i = 0; i < 3; ++i) {
    Vec3 e = Vec3::Zero();
    e[i] = h;
    fd[i] = (gamma(full, x + e) - gamma(full, x - e)) / (2.0 * h);
  }
  EXPECT_LT((an - fd).norm() / an.norm(), 1e-6);
}

TEST(Kernels, TaylorRemainderBound) {
  // |Gamma^k - sum_{j<=3} Gamma_j k^j| ~ C |x|^3 k^4; least-squares C over
  // random points. Terms far below roundoff carry no weight in the fit.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0), rad(0.1, 3.0);
  double num = 0.0, den = 0.0;
  for (double k : {1e-1, 1e-2, 1e-3}) {
    for (int n = 0; n < 100; ++n) {
      const Vec3 x = Vec3(u(rng), u(rng), u(rng)).normalized() * rad(rng);
      cdouble s = 0.0;
      for (int j = 0; j <= 3; ++j) s += gamma(KernelOrder::taylor(j), x) * std::pow(k, j);
      const double m = std::pow(x.norm(), 3) * std::pow(k, 4);
      num += std::abs(gamma(KernelOrder::full(k), x) - s) * m;
      den += m * m;
    }
  }
  EXPECT_LE(num / den, 1.01 / (96.0 * std::numbers::pi));
  EXPECT_GE(num / den, 0.9 / (96.0 * std::numbers::pi));

  const Vec3 e(1, 0, 0);
  const cdouble s1 = gamma(KernelOrder::static0(), e) + gamma(KernelOrder::linear1(), e) * 1e-2 +
                     gamma(KernelOrder::quadratic2(), e) * 1e-4 + gamma(KernelOrder::cubic3(), e) * 1e-6;
  EXPECT_LE(std::abs(gamma(KernelOrder::full(1e-2), e) - s1), 1e-8);
}

TEST(Kernels, SmoothPartIsCancellationFree) {
  const double k = 1e-3;
  EXPECT_NEAR(gamma_full_minus_static(k, 0.0).imag(), -k / kFourPi, 1e-18);
  for (double R : {1e-8, 1e-3, 0.5, 2.0}) {
    // exp(ix) - 1 = -2 sin^2(x/2) + i sin(x), free of cancellation
    const double x = k * R;
    const cdouble direct = -cdouble(-2.0 * std::pow(std::sin(0.5 * x), 2), std::sin(x)) / (kFourPi * R);
    EXPECT_LT(std::abs(gamma_full_minus_static(k, R) - direct), 1e-13 * std::abs(direct));
  }
}

TEST(Kernels, CrossDoesNotConjugate) {
  const CVec3 a(cdouble(0, 1), 0, 0), b(0, cdouble(0, 1), 0);
  const CVec3 c = cross(a, b);
  EXPECT_EQ(c[2], cdouble(-1, 0));
}
