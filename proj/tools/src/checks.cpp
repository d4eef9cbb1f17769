#include "twosphere_cli/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "twosphere/error.hpp"
#include "twosphere/geometry.hpp"
#include "twosphere/io.hpp"
#include "twosphere/oracle.hpp"

namespace twosphere::cli {
namespace {

std::string fmt(double v) { return format_number(v); }

// max_i |a_i - sign * a_{map(i)}| / max_i |a_i|
template <typename Vec>
double parity_defect(const Vec& a, const std::vector<int>& map, double sign) {
  double defect = 0.0, ref = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    defect = std::max(defect, std::abs(a[i] - sign * a[map[static_cast<std::size_t>(i)]]));
    ref = std::max(ref, std::abs(a[i]));
  }
  return ref > 0.0 ? defect / ref : defect;
}

// max |A_ij - sign * A_{r(i) c(j)}| / max |A_ij|
double matrix_parity_defect(const Eigen::MatrixXd& A, const std::vector<int>& rmap, const std::vector<int>& cmap,
                            double sign) {
  double defect = 0.0;
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i)
      defect = std::max(defect, std::abs(A(i, j) - sign * A(rmap[static_cast<std::size_t>(i)],
                                                            cmap[static_cast<std::size_t>(j)])));
  const double ref = A.cwiseAbs().maxCoeff();
  return ref > 0.0 ? defect / ref : defect;
}

}  // namespace

Check make_check(std::string name, double measured, double threshold, std::string detail) {
  Check c{std::move(name), measured, threshold, -1.0, false, std::move(detail)};
  c.pass = std::isfinite(measured) && measured <= threshold;
  return c;
}

Check make_range_check(std::string name, double measured, double lower, double upper, std::string detail) {
  Check c{std::move(name), measured, upper, lower, false, std::move(detail)};
  c.pass = std::isfinite(measured) && measured >= lower && measured <= upper;
  return c;
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

SolvedCase::SolvedCase(const TwoSphereConfig& cfg, bool first_order)
    : cfg_(cfg),
      model_(build_mesh(cfg), cfg.mesh.near_quad_order),
      ex_(LowFrequencySolver(cfg_, model_).solve(first_order)),
      fe_(cfg_, model_, ex_) {}

const NormalTraces& SolvedCase::traces() {
  if (!traces_) traces_ = fe_.normal_traces();
  return *traces_;
}

std::vector<Check> np_spectrum_checks(const MeshControls& mc) {
  MeshControls base = mc;
  base.grading_exponent = 1.0;  // no gap on a single sphere
  MeshControls fine = base;
  fine.n_theta *= 2;
  fine.n_phi *= 2;
  const NpSpectrum s0 = np_sphere_spectrum(base);
  const NpSpectrum s1 = np_sphere_spectrum(fine);
  const double e0 = s0.max_error(), e1 = s1.max_error();
  std::ostringstream d0, d1;
  d0 << "panels " << s0.panels << ", eigenvalues n<=3 vs 1/(2(2n+1))";
  d1 << "error " << fmt(e1) << " at " << s1.panels << " panels vs " << fmt(e0) << " at " << s0.panels;
  return {make_check("np_spectrum_error", e0, 2e-2, d0.str()),
          make_check("np_spectrum_refinement_ratio", e1 / e0, 0.6, d1.str())};
}

std::vector<Check> jump_checks(const BoundaryModel& model, const Vec3& p) {
  const auto& mesh = model.mesh();
  Eigen::VectorXd sigma = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.panels.size()));
  for (std::size_t i = 0; i < mesh.panels.size(); ++i)
    if (mesh.panels[i].sphere == SphereId::One) sigma[static_cast<Eigen::Index>(i)] = 1.0;
  const Eigen::VectorXd phi = interpolate_tangential(
      mesh, model.basis(), [&p](const Vec3&, const Vec3& nu) { return Vec3(nu.cross(p)); });
  const JumpReport rs = verify_jump(model, sigma, JumpKind::ScalarNormalDerivative);
  const JumpReport rv = verify_jump(model, phi, JumpKind::VectorCurlTrace);
  return {make_check("jump_scalar", rs.relative_error(), 2e-2,
                     "sigma = 1 on sphere 1; on-surface operator mismatch " + fmt(rs.max_operator_mismatch)),
          make_check("jump_vector", rv.relative_error(), 5e-2,
                     "phi = nu x p; on-surface operator mismatch " + fmt(rv.max_operator_mismatch))};
}

std::vector<Check> density_reflection_checks(SolvedCase& sc) {
  const auto& mesh = sc.model().mesh();
  const auto& basis = sc.model().basis();
  const auto& ex = sc.densities();
  const std::vector<int>& pap = mesh.antipodal;
  std::vector<Check> out;

  // phi0 as a field at centroids: phi0(x~) = -phi0(x)
  {
    double defect = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < mesh.panels.size(); ++i) {
      const int j = pap[i];
      const CVec3 a = density_on_panel(mesh, basis, ex.phi0, static_cast<int>(i), mesh.panels[i].centroid);
      const CVec3 b = density_on_panel(mesh, basis, ex.phi0, j, mesh.panels[static_cast<std::size_t>(j)].centroid);
      defect = std::max(defect, (a + b).norm());
      ref = std::max(ref, a.norm());
    }
    out.push_back(make_check("reflect_phi0_antisymmetric", ref > 0 ? defect / ref : defect, 1e-8));
  }
  const Eigen::VectorXcd d0 = surface_divergence(mesh, basis, ex.psi0);
  out.push_back(make_check("reflect_div_psi0_antisymmetric", parity_defect(d0, pap, -1.0), 1e-8));
  if (ex.has_first_order()) {
    const Eigen::VectorXcd d1 = surface_divergence(mesh, basis, ex.psi1);
    const Eigen::VectorXd re = d1.real(), im = d1.imag();
    out.push_back(make_check("reflect_div_psi1_symmetric", parity_defect(d1, pap, 1.0), 1e-8,
                             "real part: symmetric defect " + fmt(parity_defect(re, pap, 1.0)) +
                                 ", antisymmetric defect " + fmt(parity_defect(re, pap, -1.0)) +
                                 "; imaginary part: symmetric defect " + fmt(parity_defect(im, pap, 1.0))));
  }
  out.push_back(
      make_check("reflect_nu_E0_plus_antisymmetric", parity_defect(sc.traces().exterior, pap, -1.0), 1e-8));
  return out;
}

std::vector<Check> operator_reflection_checks(const BoundaryModel& model) {
  const auto& mesh = model.mesh();
  const auto& ap = model.basis().antipodal;
  const auto& pap = mesh.antipodal;
  std::vector<Check> out;

  double mesh_defect = 0.0;
  for (std::size_t i = 0; i < mesh.panels.size(); ++i) {
    const Panel& a = mesh.panels[i];
    const Panel& b = mesh.panels[static_cast<std::size_t>(pap[i])];
    mesh_defect = std::max({mesh_defect, (a.centroid + b.centroid).norm(), (a.normal + b.normal).norm()});
    if (pap[static_cast<std::size_t>(pap[i])] != static_cast<int>(i)) mesh_defect = 1.0;
  }
  out.push_back(make_check("mirror_mesh", mesh_defect, 1e-12, "centroid and normal negation, involution"));

  const KernelOrder s0 = KernelOrder::static0(), q2 = KernelOrder::quadratic2();
  out.push_back(make_check("reflect_K_star", matrix_parity_defect(assemble_adjoint_np(model).re, pap, pap, 1.0), 1e-12));
  out.push_back(make_check("reflect_M0", matrix_parity_defect(assemble_magnetic(model, s0).re, ap, ap, 1.0), 1e-12));
  out.push_back(make_check(
      "reflect_nu_cross_A0",
      matrix_parity_defect(assemble_vector_potential(model, s0, VectorPotentialOutput::NuCrossValue).re, ap, ap, -1.0),
      1e-12));
  out.push_back(make_check(
      "reflect_nu_dot_curl_A0",
      matrix_parity_defect(assemble_vector_potential(model, s0, VectorPotentialOutput::NuDotCurl).re, pap, ap, -1.0),
      1e-12));
  out.push_back(make_check(
      "reflect_nu_cross_grad_S2",
      matrix_parity_defect(assemble_nu_cross_grad_single_layer(model, q2).re, ap, pap, -1.0), 1e-12));
  out.push_back(make_check("reflect_divergence",
                           matrix_parity_defect(Eigen::MatrixXd(model.divergence()), pap, ap, 1.0), 1e-12));
  return out;
}

std::vector<Check> leading_order_checks(SolvedCase& sc) {
  const TwoSphereConfig& cfg = sc.config();
  const auto& fe = sc.fields();
  std::vector<Check> out;
  const double pn = cfg.p.norm();

  double interior = 0.0;
  for (SphereId s : {SphereId::One, SphereId::Two}) interior = std::max(interior, fe.E0(cfg.center(s)).norm());
  out.push_back(make_check("interior_E0_at_centers", pn > 0 ? interior / pn : interior, 5e-2, "max |E0|/|p| at the two centres"));

  const NormalTraces& nt = sc.traces();
  const double sup = nt.sup_norm();
  const double inner = nt.interior.cwiseAbs().maxCoeff();
  out.push_back(make_check("interior_normal_trace", sup > 0 ? inner / sup : inner, 5e-2,
                           "max |(nu.E0)-| / max |(nu.E0)+| over panel centroids"));

  const double r = cfg.r;
  double fd = 0.0;
  int used = 0, skipped = 0;
  for (const Vec3& x : {Vec3(0.0, 2.0 * r, 0.0), Vec3(0.3 * r, 0.8 * r, -0.5 * r), Vec3(0.0, 0.0, 1.5 * r),
                        Vec3(-(2.0 * r + cfg.epsilon), 0.6 * r, 0.6 * r)}) {
    try {
      const FieldDiagnostics dg = fe.diagnostics(x, fe.default_step(x));
      const double scale = fe.E0(x).norm() / r;
      fd = std::max(fd, std::max(dg.curl_residual, dg.div_residual) / scale);
      ++used;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TooCloseToBoundary) throw;
      ++skipped;  // closer than one panel diameter on this mesh
    }
  }
  if (used == 0) fd = std::numeric_limits<double>::quiet_NaN();
  out.push_back(make_check("fd_curl_div", fd, 1e-3,
                           "max residual / (|E0|/r) over " + std::to_string(used) + " exterior probes, " +
                               std::to_string(skipped) + " within a panel diameter of the surface"));

  for (SphereId s : {SphereId::One, SphereId::Two}) {
    const FluxReport f = fe.enclosing_flux(s);
    out.push_back(make_check(s == SphereId::One ? "flux_neutrality_sphere1" : "flux_neutrality_sphere2",
                             f.relative(), 1e-3, "flux " + fmt(f.flux) + " over integral of |nu.E0| " + fmt(f.abs_flux)));
  }

  // total surface charge of div psi0 on each sphere (exact for the rooftop space)
  const auto& mesh = sc.model().mesh();
  const Eigen::VectorXcd d0 = surface_divergence(mesh, sc.model().basis(), sc.densities().psi0);
  double q[2] = {0, 0}, qa[2] = {0, 0};
  for (std::size_t i = 0; i < mesh.panels.size(); ++i) {
    const int s = mesh.panels[i].sphere == SphereId::One ? 0 : 1;
    q[s] += mesh.panels[i].area * d0[static_cast<Eigen::Index>(i)].real();
    qa[s] += mesh.panels[i].area * std::abs(d0[static_cast<Eigen::Index>(i)]);
  }
  const double qrel = std::max(std::abs(q[0]) / qa[0], std::abs(q[1]) / qa[1]);
  out.push_back(make_check("charge_neutrality", qrel, 1e-12, "per-sphere integral of div psi0"));
  return out;
}

Check oracle_check(SolvedCase& sc) {
  const TwoSphereConfig& cfg = sc.config();
  const BisphericalSolution s = solve_bispherical(cfg.r, cfg.epsilon, cfg.p);
  const double ref = s.gradient(Vec3::Zero()).norm();
  const double bem = sc.fields().E0(Vec3::Zero()).norm();
  return make_check("oracle_midpoint", std::abs(bem - ref) / ref, 5e-2,
                    "|E0(O)| = " + fmt(bem) + ", series |grad u(O)| = " + fmt(ref));
}

Check series_check(const TwoSphereConfig& cfg) {
  // The full-k operators are assembled twice per k; a coarse companion mesh
  // keeps this affordable and the expansion order does not depend on h.
  TwoSphereConfig coarse = cfg;
  coarse.mesh.n_theta = 8;
  coarse.mesh.n_phi = 16;
  // grading that keeps three latitude bands inside the gap cap
  const double g3 = std::log(std::numbers::pi / std::sqrt(cfg.epsilon / cfg.r)) / std::log(8.0 / 3.0) + 0.05;
  coarse.mesh.grading_exponent = std::clamp(std::max(cfg.mesh.grading_exponent, g3), 1.0, 4.0);
  const BoundaryModel model(build_mesh(coarse), coarse.mesh.near_quad_order);
  const SeriesReport rep = check_series_consistency(coarse, model, {1e-2, 1e-3, 1e-4});
  std::ostringstream d;
  d << "residuals";
  for (double v : rep.residual) d << " " << fmt(v);
  d << "; without N1 the slope is " << fmt(rep.exponent_without_n1);
  return make_range_check("series_exponent", rep.exponent, 1.3, 1.7, d.str());
}

Check zero_half_order_check(const SolvedCase& sc) {
  const auto& ex = sc.densities();
  const double n0 = ex.psi0.norm();
  return make_check("zero_half_order", n0 > 0 ? ex.psi_half.norm() / n0 : ex.psi_half.norm(), 1e-8,
                    "||psi_half|| / ||psi0||");
}

Check gap_resolution_check(const TwoSphereConfig& cfg) {
  const int bands = bands_in_gap_cap(cfg.mesh, cfg.epsilon, cfg.r);
  Check c = make_range_check("gap_resolution", bands, 3.0, std::numeric_limits<double>::infinity(),
                             "latitude bands inside the cap of angular radius sqrt(epsilon/r)");
  return c;
}

}  // namespace twosphere::cli
