#include <gtest/gtest.h>

#include <cmath>

#include "twosphere/error.hpp"
#include "twosphere/geometry.hpp"
#include "twosphere/lowfreq.hpp"

using namespace twosphere;

namespace {

TwoSphereConfig coarse_config(const Vec3& p = Vec3(1.0, 0.0, 1.0)) {
  TwoSphereConfig cfg;
  cfg.epsilon = 0.1;
  cfg.p = p;
  cfg.mesh.n_theta = 12;
  cfg.mesh.n_phi = 24;
  return cfg;
}

struct Solved {
  TwoSphereConfig cfg = coarse_config();
  BoundaryModel model{build_mesh(cfg), cfg.mesh.near_quad_order};
  DensityExpansion ex = LowFrequencySolver(cfg, model).solve(true);
};

const Solved& solved() {
  static const Solved s;
  return s;
}

}  // namespace

TEST(LowFreq, Phi0AtGapPoleIsNuCrossP) {
  const Solved& s = solved();
  const auto& mesh = s.model.mesh();
  // panel of sphere 1 closest to its gap pole (normal (1, 0, 0))
  int best = 0;
  for (std::size_t i = 0; i < mesh.panels.size(); ++i)
    if (mesh.panels[i].normal.x() > mesh.panels[static_cast<std::size_t>(best)].normal.x() &&
        mesh.panels[i].sphere == SphereId::One)
      best = static_cast<int>(i);
  const CVec3 v = density_on_panel(mesh, s.model.basis(), s.ex.phi0, best, mesh.panels[static_cast<std::size_t>(best)].centroid);
  EXPECT_NEAR(v[0].real(), 0.0, 5e-2);
  EXPECT_NEAR(v[1].real(), -1.0, 5e-2);
  EXPECT_NEAR(v[2].real(), 0.0, 5e-2);
}

TEST(LowFreq, HalfOrderVanishes) {
  const Solved& s = solved();
  EXPECT_EQ(s.ex.phi_half.norm(), 0.0);
  EXPECT_LE(s.ex.psi_half.norm(), 1e-8 * s.ex.psi0.norm());
}

TEST(LowFreq, Psi0DivergenceAntisymmetricAndNeutral) {
  const Solved& s = solved();
  const auto& mesh = s.model.mesh();
  const Eigen::VectorXcd d = surface_divergence(mesh, s.model.basis(), s.ex.psi0);
  const double ref = d.cwiseAbs().maxCoeff();
  cdouble total = 0.0;
  double defect = 0.0;
  for (std::size_t i = 0; i < mesh.panels.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    defect = std::max(defect, std::abs(d[k] + d[mesh.antipodal[i]]));
    total += mesh.panels[i].area * d[k];
  }
  EXPECT_LE(defect, 1e-10 * ref);
  EXPECT_LE(std::abs(total), 1e-12 * ref);
}

TEST(LowFreq, PanelizedPhi0IntegratesToZero) {
  const Solved& s = solved();
  const auto& mesh = s.model.mesh();
  CVec3 total = CVec3::Zero();
  double scale = 0.0;
  for (std::size_t i = 0; i < mesh.panels.size(); ++i) {
    const CVec3 v = density_on_panel(mesh, s.model.basis(), s.ex.phi0, static_cast<int>(i), mesh.panels[i].centroid);
    total += mesh.panels[i].area * v;
    scale += mesh.panels[i].area * v.norm();
  }
  EXPECT_LE(total.norm(), 1e-10 * scale);
}

TEST(LowFreq, SolvesAreAccurate) {
  for (const auto& d : solved().ex.diagnostics) {
    EXPECT_LE(d.relative_residual, 1e-10) << d.name;
    EXPECT_GT(d.rcond_estimate, 1e-14) << d.name;
  }
}

TEST(LowFreq, ZeroPolarizationGivesZeroDensities) {
  const TwoSphereConfig cfg = coarse_config(Vec3::Zero());
  const BoundaryModel model(build_mesh(cfg), cfg.mesh.near_quad_order);
  const DensityExpansion ex = LowFrequencySolver(cfg, model).solve(true);
  EXPECT_EQ(ex.phi0.norm(), 0.0);
  EXPECT_EQ(ex.psi0.norm(), 0.0);
  EXPECT_EQ(ex.phi1.norm(), 0.0);
  EXPECT_EQ(ex.psi1.norm(), 0.0);
}

TEST(LowFreq, LogLogSlope) {
  EXPECT_NEAR(loglog_slope({1e-2, 1e-3, 1e-4}, {1e-3, 1e-3 * std::pow(10.0, -1.5), 1e-6}), 1.5, 1e-12);
}
