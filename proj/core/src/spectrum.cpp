#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "twosphere/error.hpp"
#include "twosphere/operators.hpp"

namespace twosphere {
namespace {

// Real harmonic polynomials of degree n (unnormalized), at a unit vector u.
std::vector<double> harmonics(int n, const Vec3& u) {
  const double x = u.x(), y = u.y(), z = u.z();
  switch (n) {
    case 0: return {1.0};
    case 1: return {x, y, z};
    case 2: return {x * y, y * z, z * x, x * x - y * y, 3 * z * z - 1};
    case 3:
      return {x * (x * x - 3 * y * y), y * (3 * x * x - y * y), z * (x * x - y * y), x * y * z,
              x * (5 * z * z - 1),     y * (5 * z * z - 1),     z * (5 * z * z - 3)};
  }
  throw Error(ErrorCode::UnsupportedCombination, "harmonic degree must be 0..3");
}

// Orthonormal basis of the column span (Householder QR, thin Q).
Eigen::MatrixXd orthonormal(const Eigen::MatrixXd& A) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  return qr.householderQ() * Eigen::MatrixXd::Identity(A.rows(), A.cols());
}

}  // namespace

double NpSpectrum::max_error() const {
  double e = 0.0;
  for (std::size_t i = 0; i < computed.size(); ++i) e = std::max(e, std::abs(computed[i] - exact[i]));
  return e;
}

NpSpectrum np_sphere_spectrum(const MeshControls& mc, double r, int n_max) {
  if (n_max < 0 || n_max > 3) throw Error(ErrorCode::UnsupportedCombination, "n_max must be 0..3");
  if (!(r > 0.0)) throw Error(ErrorCode::NonPositive, "radius must be positive");
  const BoundaryModel model(build_sphere_mesh(Vec3::Zero(), r, mc), mc.near_quad_order);
  const Eigen::MatrixXd K = std::move(assemble_adjoint_np(model).re);
  const auto& panels = model.mesh().panels;
  const Eigen::Index P = static_cast<Eigen::Index>(panels.size());

  // Work in the area-weighted inner product: s = sqrt(area) * density.
  Eigen::VectorXd w(P);
  for (Eigen::Index i = 0; i < P; ++i) w[i] = std::sqrt(panels[static_cast<std::size_t>(i)].area);
  const Eigen::VectorXd winv = w.cwiseInverse();
  auto apply = [&](const Eigen::MatrixXd& X) -> Eigen::MatrixXd {
    return w.asDiagonal() * (K * (winv.asDiagonal() * X));
  };

  std::vector<Eigen::MatrixXd> Yn;  // orthonormal harmonic block per degree
  Eigen::Index m = 0;
  for (int n = 0; n <= n_max; ++n) {
    Eigen::MatrixXd Y(P, 2 * n + 1);
    for (Eigen::Index i = 0; i < P; ++i) {
      const auto h = harmonics(n, panels[static_cast<std::size_t>(i)].centroid.normalized());
      for (int c = 0; c <= 2 * n; ++c) Y(i, c) = w[i] * h[static_cast<std::size_t>(c)];
    }
    Yn.push_back(orthonormal(Y));
    m += 2 * n + 1;
  }
  Eigen::MatrixXd V(P, 3 * m);  // [Y, K Y, K^2 Y]
  Eigen::Index col = 0;
  for (const auto& Y : Yn) {
    V.middleCols(col, Y.cols()) = Y;
    col += Y.cols();
  }
  V.middleCols(m, m) = apply(V.leftCols(m));
  V.middleCols(2 * m, m) = apply(V.middleCols(m, m));
  const Eigen::MatrixXd Q = orthonormal(V);
  const Eigen::MatrixXd H = Q.transpose() * apply(Q);
  Eigen::EigenSolver<Eigen::MatrixXd> es(H);
  const Eigen::MatrixXcd ritz = Q.cast<cdouble>() * es.eigenvectors();

  NpSpectrum out;
  out.panels = static_cast<int>(P);
  for (int n = 0; n <= n_max; ++n) {
    std::vector<std::pair<double, Eigen::Index>> weight;
    for (Eigen::Index j = 0; j < ritz.cols(); ++j) {
      const Eigen::VectorXcd v = ritz.col(j).normalized();
      weight.emplace_back((Yn[static_cast<std::size_t>(n)].transpose().cast<cdouble>() * v).squaredNorm(), j);
    }
    std::sort(weight.begin(), weight.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::vector<double> vals;
    for (int c = 0; c <= 2 * n; ++c) vals.push_back(es.eigenvalues()[weight[static_cast<std::size_t>(c)].second].real());
    std::sort(vals.begin(), vals.end());
    for (double v : vals) {
      out.degree.push_back(n);
      out.computed.push_back(v);
      out.exact.push_back(1.0 / (2.0 * (2 * n + 1)));
    }
  }
  return out;
}

}  // namespace twosphere
