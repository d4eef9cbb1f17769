#include "twosphere/fields.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "twosphere/error.hpp"
#include "twosphere/quadrature.hpp"
#include "twosphere/parallel.hpp"
#include "moments.hpp"

namespace twosphere {
namespace {

using namespace detail;

int point_proximity(const Vec3& x, const Panel& P) {
  const double d = (x - P.centroid).norm();
  if (d < 2.0 * P.diameter) return 2;
  if (d < 6.0 * P.diameter) return 1;
  return 0;
}

// Adds curl A[phi] + grad S[sigma] for one kernel, optionally the value A[psi].
template <typename Kern>
CVec3 panel_sum(const BoundaryModel& m, const Kern& kern, const Vec3& x, const Eigen::VectorXcd* phi,
                const Eigen::VectorXcd* sigma, const Eigen::VectorXcd* value_density) {
  const auto& mesh = m.mesh();
  const auto& basis = m.basis();
  CVec3 out = CVec3::Zero();
  for (int j = 0; j < static_cast<int>(mesh.panels.size()); ++j) {
    const Panel& P = mesh.panels[j];
    const auto mo = source_moments(m, kern, x, j, point_proximity(x, P), value_density != nullptr);
    const CVec3 Gk = mo.Gk.template cast<cdouble>();
    if (sigma) out += (*sigma)[j] * Gk;
    for (int b = 0; b < 3; ++b) {
      const LocalBasis& lb = basis.local[j][b];
      if (phi) out += ((*phi)[lb.edge] * lb.coeff) * cross(Gk, (x - P.v[b]).cast<cdouble>());
      if (value_density) {
        const CVec3 U = mo.Y.template cast<cdouble>() - P.v[b].cast<cdouble>() * cdouble(mo.I);
        out += ((*value_density)[lb.edge] * lb.coeff) * U;
      }
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(FieldRegion r) {
  switch (r) {
    case FieldRegion::Exterior: return "exterior";
    case FieldRegion::Inside1: return "inside1";
    case FieldRegion::Inside2: return "inside2";
  }
  return "?";
}

FieldRegion classify(const TwoSphereConfig& cfg, const Vec3& x) {
  if ((x - cfg.center(SphereId::One)).norm() < cfg.r) return FieldRegion::Inside1;
  if ((x - cfg.center(SphereId::Two)).norm() < cfg.r) return FieldRegion::Inside2;
  return FieldRegion::Exterior;
}

double boundary_distance(const TwoSphereConfig& cfg, const Vec3& x) {
  return std::min(std::abs((x - cfg.center(SphereId::One)).norm() - cfg.r),
                  std::abs((x - cfg.center(SphereId::Two)).norm() - cfg.r));
}

double NormalTraces::sup_norm() const { return exterior.cwiseAbs().maxCoeff(); }

cdouble NormalTraces::flux(const SurfaceMesh& mesh, SphereId s) const {
  cdouble f = 0.0;
  for (std::size_t i = 0; i < mesh.panels.size(); ++i)
    if (mesh.panels[i].sphere == s) f += mesh.panels[i].area * exterior[static_cast<Eigen::Index>(i)];
  return f;
}

FieldEvaluator::FieldEvaluator(const TwoSphereConfig& cfg, const BoundaryModel& model,
                               const DensityExpansion& ex)
    : cfg_(cfg), model_(model), ex_(ex) {
  div_psi0_ = surface_divergence(model.mesh(), model.basis(), ex.psi0);
  if (ex.has_first_order()) div_psi1_ = surface_divergence(model.mesh(), model.basis(), ex.psi1);
}

void FieldEvaluator::check_distance(const Vec3& x) const {
  double best = std::numeric_limits<double>::infinity();
  double diam = 0.0;
  for (const Panel& P : model_.mesh().panels) {
    const double d = (x - P.centroid).squaredNorm();
    if (d < best) {
      best = d;
      diam = P.diameter;
    }
  }
  const double dist = boundary_distance(cfg_, x);
  if (dist < diam)
    throw Error(ErrorCode::TooCloseToBoundary, "point is " + std::to_string(dist) +
                                                   " from the surface, local panel diameter " +
                                                   std::to_string(diam));
}

CVec3 FieldEvaluator::layer_field(const Vec3& x, const Eigen::VectorXcd& phi,
                                  const Eigen::VectorXcd& div_psi) const {
  return panel_sum(model_, StaticKernel{}, x, &phi, &div_psi, nullptr);
}

CVec3 FieldEvaluator::E0(const Vec3& x) const {
  check_distance(x);
  CVec3 e = layer_field(x, ex_.phi0, div_psi0_);
  if (classify(cfg_, x) == FieldRegion::Exterior) e += cfg_.p.cast<cdouble>();
  return e;
}

CVec3 FieldEvaluator::E1(const Vec3& x) const {
  if (!ex_.has_first_order()) throw Error(ErrorCode::InvalidValue, "first-order densities were not solved");
  check_distance(x);
  CVec3 e = layer_field(x, ex_.phi1, div_psi1_);
  if (classify(cfg_, x) == FieldRegion::Exterior) {
    e += (cdouble(0.0, 1.0) * x.dot(cfg_.d)) * cfg_.p.cast<cdouble>();
  } else {
    const double C = cfg_.c_tilde;
    e += C * panel_sum(model_, PolyKernel{2}, x, &ex_.phi0, &div_psi0_, nullptr);
    e += C * panel_sum(model_, StaticKernel{}, x, nullptr, nullptr, &ex_.psi0);
  }
  return e;
}

double FieldEvaluator::default_step(const Vec3& x) const {
  return std::min(1e-4 * cfg_.r, boundary_distance(cfg_, x) / 10.0);
}

FieldDiagnostics FieldEvaluator::diagnostics(const Vec3& x, double h) const {
  if (!(h > 0.0) || boundary_distance(cfg_, x) < 10.0 * h)
    throw Error(ErrorCode::TooCloseToBoundary, "finite-difference stencil reaches the surface");
  Eigen::Matrix<cdouble, 3, 3> J;  // J(i, j) = d E_i / d x_j
  for (int j = 0; j < 3; ++j) {
    Vec3 xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    J.col(j) = (E0(xp) - E0(xm)) / (2.0 * h);
  }
  const CVec3 curl(J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1));
  return {h, curl.norm(), std::abs(J.trace())};
}

FieldProbe FieldEvaluator::probe(const Vec3& x, bool with_diagnostics) const {
  FieldProbe pr;
  pr.point = x;
  pr.region = classify(cfg_, x);
  pr.E0 = E0(x);
  if (ex_.has_first_order()) pr.E1 = E1(x);
  if (with_diagnostics) pr.diagnostics = diagnostics(x, default_step(x));
  return pr;
}

std::vector<FieldProbe> FieldEvaluator::probe_all(const std::vector<Vec3>& xs, bool with_diagnostics) const {
  std::vector<FieldProbe> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = probe(xs[i], with_diagnostics); });
  return out;
}

NormalTraces FieldEvaluator::normal_traces() const {
  // (nu . E0)-+ = nu . curl A0[phi0] + (-+1/2 + K*)[div psi0], plus nu . p outside.
  const auto& mesh = model_.mesh();
  const auto& basis = model_.basis();
  const Eigen::Index P = static_cast<Eigen::Index>(mesh.panels.size());
  NormalTraces nt;
  nt.exterior.resize(P);
  nt.interior.resize(P);
  parallel_for(mesh.panels.size(), [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    const Panel& Pi = mesh.panels[i];
    const Vec3& x = Pi.centroid;
    cdouble v = 0.0;
    for (int j = 0; j < static_cast<int>(mesh.panels.size()); ++j) {
      const Panel& Pj = mesh.panels[j];
      const bool same = Pj.sphere == Pi.sphere;
      const auto mo = source_moments(model_, StaticKernel{}, x, j, proximity(Pi, Pj), same);
      const Vec3 Gk = mo.Gk;
      // same-sphere K* through the single layer, as in assemble_adjoint_np
      const double kij = same ? -0.5 * mo.I / mesh.radius : Pi.normal.dot(Gk);
      v += div_psi0_[j] * kij;
      for (int b = 0; b < 3; ++b) {
        const LocalBasis& lb = basis.local[j][b];
        v += (ex_.phi0[lb.edge] * lb.coeff) * Pi.normal.dot(Gk.cross(x - Pj.v[b]));
      }
    }
    const cdouble s = div_psi0_[i];
    nt.interior[i] = v - 0.5 * s;
    nt.exterior[i] = v + 0.5 * s + Pi.normal.dot(cfg_.p);
  });
  return nt;
}

FluxReport FieldEvaluator::enclosing_flux(SphereId s, int n_lat, int n_lon) const {
  if (n_lat < 2 || n_lon < 1) throw Error(ErrorCode::InvalidValue, "flux rule needs n_lat >= 2, n_lon >= 1");
  const Vec3 c = model_.mesh().centers[s == SphereId::One ? 0 : 1];
  const Vec3 g = -c.normalized();  // towards the gap midpoint
  const double R = c.norm() + 4.0 * cfg_.r;
  const Vec3 o = -g * R;  // centre of the enclosing sphere (relative to the origin)
  const Vec3 e1 = g.unitOrthogonal(), e2 = g.cross(e1);

  // polar angle from the gap direction, split into three panels of equal node count
  std::vector<std::pair<double, double>> th;
  const auto gl = gauss_legendre01(std::max(1, n_lat / 3));
  const double cut1 = 0.5 * cfg_.r / R, cut2 = 2.0 * cfg_.r / R;
  for (const auto& [a, b] :
       std::array<std::pair<double, double>, 3>{{{0.0, cut1}, {cut1, cut2}, {cut2, std::numbers::pi}}})
    for (const auto& [x, w] : gl) th.emplace_back(a + (b - a) * x, (b - a) * w);

  const std::size_t n = th.size() * static_cast<std::size_t>(n_lon);
  std::vector<double> val(n), wt(n);
  parallel_for(n, [&](std::size_t q) {
    const auto& [t, w] = th[q / static_cast<std::size_t>(n_lon)];
    const double ph = 2.0 * std::numbers::pi * (static_cast<double>(q % static_cast<std::size_t>(n_lon)) + 0.5) / n_lon;
    const Vec3 nu = std::cos(t) * g + std::sin(t) * (std::cos(ph) * e1 + std::sin(ph) * e2);
    // the flat-panel near field is exact at any clearance, so no distance guard here
    const CVec3 e = layer_field(o + R * nu, ex_.phi0, div_psi0_) + cfg_.p.cast<cdouble>();
    val[q] = e.real().dot(nu);
    wt[q] = w * std::sin(t) * R * R * (2.0 * std::numbers::pi / n_lon);
  });
  FluxReport rep;
  for (std::size_t q = 0; q < n; ++q) {
    rep.flux += wt[q] * val[q];
    rep.abs_flux += wt[q] * std::abs(val[q]);
  }
  return rep;
}

}  // namespace twosphere
