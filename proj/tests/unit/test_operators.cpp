#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "twosphere/geometry.hpp"
#include "twosphere/operators.hpp"
#include "twosphere/quadrature.hpp"

using namespace twosphere;

namespace {

MeshControls controls(int nt, double grading = 2.0) {
  MeshControls mc;
  mc.n_theta = nt;
  mc.n_phi = 2 * nt;
  mc.grading_exponent = grading;
  return mc;
}

BoundaryModel unit_sphere(int nt, double grading = 2.0) {
  const MeshControls mc = controls(nt, grading);
  return BoundaryModel(build_sphere_mesh(Vec3::Zero(), 1.0, mc), mc.near_quad_order);
}

// Panel-centroid samples of f on the unit sphere.
template <typename F>
Eigen::VectorXd sample(const SurfaceMesh& mesh, F f) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(mesh.panels.size()));
  for (std::size_t i = 0; i < mesh.panels.size(); ++i) v[static_cast<Eigen::Index>(i)] = f(mesh.panels[i].centroid.normalized());
  return v;
}

double weighted_rel(const SurfaceMesh& mesh, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double e = 0.0, r = 0.0;
  for (std::size_t i = 0; i < mesh.panels.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    e += mesh.panels[i].area * (a[k] - b[k]) * (a[k] - b[k]);
    r += mesh.panels[i].area * b[k] * b[k];
  }
  return std::sqrt(e / r);
}

double y2(const Vec3& n) { return 3.0 * n.z() * n.z() - 1.0; }

}  // namespace

TEST(Operators, SingleLayerOfConstantOnDefaultSphere) {
  const MeshControls mc;  // default resolution
  const BoundaryModel m(build_sphere_mesh(Vec3::Zero(), 1.0, mc), mc.near_quad_order);
  const Eigen::MatrixXd S = assemble_scalar_single_layer(m, KernelOrder::static0()).re;
  const Eigen::VectorXd v = S * Eigen::VectorXd::Ones(S.cols());
  EXPECT_LE((v.array() + 1.0).abs().maxCoeff(), 2e-2);
  // S[Y1] = -Y1/3
  const Eigen::VectorXd y1 = sample(m.mesh(), [](const Vec3& n) { return n.y(); });
  EXPECT_LE(weighted_rel(m.mesh(), S * y1, -y1 / 3.0), 3e-2);
}

TEST(Operators, QuadraticSingleLayerMatchesDirectQuadrature) {
  // Gamma_2 = |x - y| / (8 pi) is continuous, so a fine composite rule on the
  // same flat panels is an independent reference.
  const BoundaryModel m = unit_sphere(12);
  const Eigen::MatrixXd S2 = assemble_scalar_single_layer(m, KernelOrder::quadratic2()).re;
  const Eigen::VectorXd v = S2 * Eigen::VectorXd::Ones(S2.cols());
  ASSERT_TRUE(v.allFinite());
  const TriRule fine = subdivide(symmetric_rule(7), 4);
  const auto& mesh = m.mesh();
  for (std::size_t i = 0; i < mesh.panels.size(); i += 37) {
    const Vec3 x = mesh.panels[i].centroid;
    double ref = 0.0;
    for (const Panel& P : mesh.panels)
      ref += integrate(fine, P.v[0], P.v[1], P.v[2], P.area, [&x](const Vec3& y) { return (x - y).norm(); });
    ref /= 8.0 * std::numbers::pi;
    EXPECT_NEAR(v[static_cast<Eigen::Index>(i)], ref, 1e-6 * ref);
  }
  // and close to the exact sphere value 2/3
  EXPECT_LE((v.array() - 2.0 / 3.0).abs().maxCoeff(), 5e-2);
}

TEST(Operators, AdjointNpOnHarmonics) {
  double err[2];
  int k = 0;
  for (int nt : {26, 52}) {  // default resolution and one refinement
    const BoundaryModel m = unit_sphere(nt);
    const Eigen::MatrixXd K = assemble_adjoint_np(m).re;
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(K.cols());
    EXPECT_LE(weighted_rel(m.mesh(), K * one, 0.5 * one), 2e-2);
    const Eigen::VectorXd y = sample(m.mesh(), y2);
    err[k++] = weighted_rel(m.mesh(), K * y, y / 10.0);
  }
  EXPECT_LE(err[0], 5e-2);
  EXPECT_LE(err[1], 0.6 * err[0]);
}

TEST(Operators, NpSpectrumOnCoarseSphere) {
  const NpSpectrum s = np_sphere_spectrum(controls(12, 1.0));
  ASSERT_EQ(s.computed.size(), 16u);
  for (std::size_t i = 0; i < s.computed.size(); ++i) {
    EXPECT_DOUBLE_EQ(s.exact[i], 1.0 / (2.0 * (2 * s.degree[i] + 1)));
    EXPECT_NEAR(s.computed[i], s.exact[i], 2e-2);
  }
}

TEST(Operators, LinearVectorPotentialAnnihilatesIncidentTrace) {
  const BoundaryModel m = unit_sphere(12);
  const Vec3 p(1.0, 0.0, 1.0);
  const Eigen::VectorXd phi = interpolate_tangential(
      m.mesh(), m.basis(), [&p](const Vec3&, const Vec3& nu) { return Vec3(nu.cross(p)); });
  const DiscreteOperator A1 = assemble_vector_potential(m, KernelOrder::linear1(), VectorPotentialOutput::NuCrossValue);
  const Eigen::VectorXcd out = A1.apply(phi.cast<cdouble>());
  EXPECT_LE(out.norm(), 1e-3 * phi.norm());
}

TEST(Operators, MagneticOperatorPlusHalfIsInvertible) {
  const BoundaryModel m = unit_sphere(16);
  const Eigen::MatrixXd M = assemble_magnetic(m, KernelOrder::static0()).re;
  // Galerkin form: I/2 enters through the Gram matrix
  const Eigen::MatrixXd W = 0.5 * Eigen::MatrixXd(m.gram()) + M;
  // smallest singular value of the Gram-normalised operator
  const Eigen::LLT<Eigen::MatrixXd> llt{Eigen::MatrixXd(m.gram())};
  const Eigen::MatrixXd Lw = llt.matrixL().solve(W);
  const Eigen::MatrixXd N = llt.matrixL().solve(Lw.transpose()).transpose();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(N);
  EXPECT_GE(svd.singularValues().minCoeff(), 0.1);
}

TEST(Operators, DivergenceTotalsVanish) {
  const BoundaryModel m = unit_sphere(12);
  const Eigen::VectorXd psi = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(m.edges()), -1.0, 2.0).array().sin();
  const Eigen::VectorXd d = m.divergence() * psi;
  double total = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < m.panels(); ++i) {
    total += m.mesh().panels[i].area * d[static_cast<Eigen::Index>(i)];
    scale += m.mesh().panels[i].area * std::abs(d[static_cast<Eigen::Index>(i)]);
  }
  EXPECT_LE(std::abs(total), 1e-13 * scale);
  const DiscreteOperator D = assemble_surface_divergence(m);
  EXPECT_LE((D.re * psi - d).cwiseAbs().maxCoeff(), 1e-14 * d.cwiseAbs().maxCoeff());
}

TEST(Operators, JumpRelations) {
  TwoSphereConfig cfg;
  cfg.epsilon = 0.1;
  cfg.mesh = controls(12);
  const BoundaryModel m(build_mesh(cfg), cfg.mesh.near_quad_order);
  Eigen::VectorXd sigma = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m.panels()));
  const JumpReport zero = verify_jump(m, sigma, JumpKind::ScalarNormalDerivative);
  EXPECT_EQ(zero.max_error, 0.0);
  for (std::size_t i = 0; i < m.panels(); ++i)
    if (m.mesh().panels[i].sphere == SphereId::One) sigma[static_cast<Eigen::Index>(i)] = 1.0;
  EXPECT_LE(verify_jump(m, sigma, JumpKind::ScalarNormalDerivative).relative_error(), 2e-2);

  const Vec3 p(1.0, 0.0, 1.0);
  const Eigen::VectorXd phi = interpolate_tangential(
      m.mesh(), m.basis(), [&p](const Vec3&, const Vec3& nu) { return Vec3(nu.cross(p)); });
  EXPECT_LE(verify_jump(m, phi, JumpKind::VectorCurlTrace).relative_error(), 5e-2);
  EXPECT_EQ(verify_jump(m, Eigen::VectorXd::Zero(phi.size()), JumpKind::VectorCurlTrace).max_error, 0.0);
}

TEST(Operators, MirrorIdentitiesAreExact) {
  TwoSphereConfig cfg;
  cfg.epsilon = 0.2;
  cfg.mesh = controls(8, 3.0);
  const BoundaryModel m(build_mesh(cfg), cfg.mesh.near_quad_order);
  const auto& ap = m.basis().antipodal;
  const auto& pap = m.mesh().antipodal;
  const Eigen::MatrixXd M = assemble_magnetic(m, KernelOrder::static0()).re;
  const Eigen::MatrixXd C = assemble_vector_potential(m, KernelOrder::static0(), VectorPotentialOutput::NuDotCurl).re;
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) ASSERT_EQ(M(i, j), M(ap[i], ap[j]));
  for (Eigen::Index i = 0; i < C.rows(); ++i)
    for (Eigen::Index j = 0; j < C.cols(); ++j) ASSERT_EQ(C(i, j), -C(pap[i], ap[j]));
}
