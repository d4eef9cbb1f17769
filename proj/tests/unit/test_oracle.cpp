#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "reference_values.hpp"
#include "twosphere/error.hpp"
#include "twosphere/oracle.hpp"

using namespace twosphere;

TEST(Oracle, MidpointMatchesHighPrecisionSeries) {
  for (const auto& ref : reference::kMidpoint) {
    const BisphericalSolution ax = solve_bispherical(1.0, ref.eps, Vec3(1, 0, 0));
    const Vec3 ga = ax.gradient(Vec3::Zero());
    EXPECT_NEAR(ga.x(), ref.axial_dudx, 1e-9 * ref.axial_dudx) << "eps " << ref.eps;
    const BisphericalSolution tr = solve_bispherical(1.0, ref.eps, Vec3(0, 0, 1));
    EXPECT_NEAR(tr.gradient(Vec3::Zero()).z(), ref.transverse_dudz, 1e-9) << "eps " << ref.eps;
  }
}

TEST(Oracle, OffAxisGradientAndPotential) {
  const BisphericalSolution s = solve_bispherical(1.0, 0.1, Vec3(1, 0, 1));
  const Vec3 g1 = s.gradient(Vec3(0.3, 0.8, -0.5));
  const Vec3 g2 = s.gradient(Vec3(0.0, 2.0, 0.0));
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(g1[i], reference::kGradAt_03_08_m05[i], 1e-9);
    EXPECT_NEAR(g2[i], reference::kGradAt_0_2_0[i], 1e-9);
  }
  const BisphericalSolution ax = solve_bispherical(1.0, 0.1, Vec3(1, 0, 0));
  EXPECT_NEAR(ax.sphere_potential(SphereId::Two), reference::kAxialPotentialEps01, 1e-12);
  EXPECT_NEAR(ax.sphere_potential(SphereId::One), -reference::kAxialPotentialEps01, 1e-12);
}

TEST(Oracle, BoundaryConditionsAndFlux) {
  for (double eps : {0.1, 0.01}) {
    const BisphericalSolution s = solve_bispherical(1.0, eps, Vec3(1, 0, 1));
    EXPECT_LE(boundary_residual(s), 1e-10);
    const double scale = s.gradient(Vec3::Zero()).norm() * 4.0 * std::numbers::pi;
    for (SphereId id : {SphereId::One, SphereId::Two}) EXPECT_LE(std::abs(sphere_flux(s, id)), 1e-6 * scale);
  }
}

TEST(Oracle, AxialBlowUpAndBoundedTransverse) {
  const double ta = solve_bispherical(1.0, 0.01, Vec3(0, 1, 0)).gradient(Vec3::Zero()).norm();
  const double tb = solve_bispherical(1.0, 0.1, Vec3(0, 1, 0)).gradient(Vec3::Zero()).norm();
  EXPECT_LE(ta / tb, 2.0);
  const double aa = solve_bispherical(1.0, 0.01, Vec3(1, 0, 0)).gradient(Vec3::Zero()).norm();
  const double ab = solve_bispherical(1.0, 0.1, Vec3(1, 0, 0)).gradient(Vec3::Zero()).norm();
  EXPECT_GE(aa / ab, 5.0);
}

TEST(Oracle, WideSeparationRecoversIncidentField) {
  const Vec3 p(1, 0, 1);
  const BisphericalSolution s = solve_bispherical(1.0, 100.0, p);
  EXPECT_LE((s.gradient(Vec3::Zero()) - p).norm(), 1e-2 * p.norm());
}

TEST(Oracle, Superposition) {
  const Vec3 a(1.0, 0.0, 0.5), b(-0.3, 0.7, 0.2);
  const BisphericalSolution sa = solve_bispherical(1.0, 0.05, a, 400);
  const BisphericalSolution sb = solve_bispherical(1.0, 0.05, b, 400);
  const BisphericalSolution sab = solve_bispherical(1.0, 0.05, a + b, 400);
  for (const Vec3& x : {Vec3(0.1, 0.2, 0.3), Vec3(0.0, 2.0, 1.0), Vec3(-3.0, 0.5, 0.0)}) {
    const double u = sab.potential(x);
    EXPECT_NEAR(u, sa.potential(x) + sb.potential(x), 1e-12 * std::max(1.0, std::abs(u)));
  }
}

TEST(Oracle, TruncationFloor) {
  EXPECT_THROW(solve_bispherical(1.0, 0.1, Vec3(1, 0, 0), 5), Error);
  try {
    solve_bispherical(1.0, 1e-7, Vec3(1, 0, 0));
    FAIL() << "expected TruncationInsufficient";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TruncationInsufficient);
  }
}
