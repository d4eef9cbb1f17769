#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "twosphere/geometry.hpp"
#include "twosphere/kernels.hpp"
#include "twosphere/quadrature.hpp"

namespace twosphere {

enum class Space { ScalarPanel, TangentEdge, Vector3Panel };
enum class Region { Sphere1, Sphere2, Both };

// Dense operator stored as separate real and imaginary parts; an empty part
// is exactly zero (static kernels are real, Linear1 is purely imaginary).
struct DiscreteOperator {
  Eigen::MatrixXd re;
  Eigen::MatrixXd im;
  Space domain = Space::ScalarPanel;
  Space range = Space::ScalarPanel;
  KernelOrder order = KernelOrder::static0();
  Region source = Region::Both;
  Region target = Region::Both;

  Eigen::Index rows() const { return re.size() ? re.rows() : im.rows(); }
  Eigen::Index cols() const { return re.size() ? re.cols() : im.cols(); }
  bool has_real() const { return re.size() > 0; }
  bool has_imag() const { return im.size() > 0; }
  Eigen::MatrixXcd to_complex() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
};

// Mesh, edge basis and per-panel quadrature shared by all assembly routines.
class BoundaryModel {
 public:
  struct QPoint {
    Vec3 x;
    double w;  // weight times panel area
  };

  BoundaryModel(SurfaceMesh mesh, int near_quad_order);

  const SurfaceMesh& mesh() const { return mesh_; }
  const EdgeBasis& basis() const { return basis_; }
  std::size_t panels() const { return mesh_.panels.size(); }
  std::size_t edges() const { return basis_.size(); }
  int near_quad_order() const { return near_order_; }

  const std::vector<QPoint>& points(int panel, int rule) const;  // rule: 0 coarse, 1 medium, 2 near test, 3 near source, 4 self source
  const std::vector<std::vector<int>>& colors() const { return colors_; }

  // P x E map from edge coefficients to panel divergences (exact rooftop values).
  const Eigen::SparseMatrix<double>& divergence() const { return div_; }
  // Gram matrix <f_m, f_n> of the edge basis.
  const Eigen::SparseMatrix<double>& gram() const { return gram_; }

 private:
  SurfaceMesh mesh_;
  EdgeBasis basis_;
  int near_order_;
  std::vector<std::vector<QPoint>> pts_[5];
  std::vector<std::vector<int>> colors_;
  Eigen::SparseMatrix<double> div_;
  Eigen::SparseMatrix<double> gram_;
};

// Proximity class of a panel pair: 2 near (< 2 diameters), 1 medium (< 6), 0 far.
int proximity(const Panel& a, const Panel& b);

DiscreteOperator assemble_scalar_single_layer(const BoundaryModel& m, KernelOrder order);
DiscreteOperator assemble_adjoint_np(const BoundaryModel& m);

enum class VectorPotentialOutput { Value, Curl, NuCrossValue, NuCrossCurl, NuDotCurl, NuDotValue };
std::string_view to_string(VectorPotentialOutput out);

// Value/Curl collocate at centroids (3P rows, xyz per panel); NuDot* collocate
// (P rows); NuCross* are Galerkin-tested with the edge basis (E rows).
DiscreteOperator assemble_vector_potential(const BoundaryModel& m, KernelOrder order,
                                           VectorPotentialOutput out);

// Galerkin matrix of M^k = nu x curl A^k on the edge space.
DiscreteOperator assemble_magnetic(const BoundaryModel& m, KernelOrder order);

// Galerkin matrix (E x P) of nu x grad S^k applied to panel-constant densities.
DiscreteOperator assemble_nu_cross_grad_single_layer(const BoundaryModel& m, KernelOrder order);

// Exact divergence map wrapped as a dense operator (ScalarPanel <- TangentEdge).
DiscreteOperator assemble_surface_divergence(const BoundaryModel& m);

// Galerkin right-hand side <f_m, F> for a tangential field F(x, normal).
Eigen::VectorXcd galerkin_project(const BoundaryModel& m,
                                  const std::function<CVec3(const Vec3&, const Vec3&)>& field);

// Jump relation check.
enum class JumpKind { ScalarNormalDerivative, VectorCurlTrace };
struct JumpReport {
  JumpKind kind;
  double max_error = 0.0;       // max over sample panels of |jump - expected|
  double reference_norm = 0.0;  // max |expected|
  double relative_error() const { return reference_norm > 0 ? max_error / reference_norm : max_error; }
  double max_operator_mismatch = 0.0;  // one-sided traces vs (+-I/2 + K*) or (-+I/2 + M) on-surface
};
// Scalar: density is panel-constant sigma. Vector: density is edge coefficients.
JumpReport verify_jump(const BoundaryModel& m, const Eigen::VectorXd& density, JumpKind kind,
                       int sample_stride = 7);

// Low end of the Neumann-Poincare spectrum on one sphere of radius r.
// Ritz values of the discrete K* from a block Krylov space seeded with the
// spherical harmonics of degree <= n_max; each value is assigned to the degree
// whose harmonics carry most of its Ritz vector. Exact values are 1/(2(2n+1)).
struct NpSpectrum {
  std::vector<int> degree;
  std::vector<double> computed;
  std::vector<double> exact;
  int panels = 0;
  double max_error() const;
};
NpSpectrum np_sphere_spectrum(const MeshControls& mc, double r = 1.0, int n_max = 3);

}  // namespace twosphere
