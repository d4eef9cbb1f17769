#include "twosphere/lowfreq.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/SparseCholesky>

#include "twosphere/error.hpp"

namespace twosphere {
namespace {

const cdouble kI(0.0, 1.0);

Eigen::VectorXcd apply_real(const Eigen::MatrixXd& A, const Eigen::VectorXcd& x) {
  Eigen::VectorXcd y(A.rows());
  y.real() = A * x.real();
  y.imag() = A * x.imag();
  return y;
}

Eigen::VectorXcd apply_real(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXcd& x) {
  Eigen::VectorXcd y(A.rows());
  y.real() = A * x.real();
  y.imag() = A * x.imag();
  return y;
}

// Integral over the whole boundary of the edge expansion c.
CVec3 integrate_density(const BoundaryModel& m, const Eigen::VectorXcd& c) {
  CVec3 total = CVec3::Zero();
  const auto& mesh = m.mesh();
  for (std::size_t t = 0; t < mesh.panels.size(); ++t) {
    const Panel& P = mesh.panels[t];
    for (int a = 0; a < 3; ++a) {
      const LocalBasis& lb = m.basis().local[t][a];
      total += (c[lb.edge] * (lb.coeff * P.area)) * (P.centroid - P.v[a]).cast<cdouble>();
    }
  }
  return total;
}

}  // namespace

LowFrequencySolver::LowFrequencySolver(const TwoSphereConfig& cfg, const BoundaryModel& model)
    : cfg_(cfg), model_(model) {}

Eigen::VectorXcd LowFrequencySolver::compute_phi0() const {
  const Vec3 p = cfg_.p;
  const Eigen::VectorXd c = interpolate_tangential(
      model_.mesh(), model_.basis(), [&p](const Vec3&, const Vec3& nu) { return Vec3(nu.cross(p)); });
  return c.cast<cdouble>();
}

void LowFrequencySolver::ensure_W() {
  if (W_lu_) return;
  W_ = assemble_magnetic(model_, KernelOrder::static0()).re;
  W_ += 0.5 * Eigen::MatrixXd(model_.gram());
  W_ *= cfg_.c_tilde;
  W_lu_ = std::make_unique<Eigen::PartialPivLU<Eigen::MatrixXd>>(W_);
}

void LowFrequencySolver::ensure_Q() {
  if (Q_.size()) return;
  Q_ = assemble_vector_potential(model_, KernelOrder::static0(), VectorPotentialOutput::NuCrossValue).re;
  const Eigen::MatrixXd gs2 = assemble_nu_cross_grad_single_layer(model_, KernelOrder::quadratic2()).re;
  Q_ += gs2 * model_.divergence();
  Q_ *= cfg_.c_tilde;
}

const Eigen::MatrixXd& LowFrequencySolver::W() {
  ensure_W();
  return W_;
}

const Eigen::MatrixXd& LowFrequencySolver::Q() {
  ensure_Q();
  return Q_;
}

Eigen::VectorXcd LowFrequencySolver::solve_W(const Eigen::VectorXcd& rhs, const std::string& name) {
  ensure_W();
  const double rcond = W_lu_->rcond();
  if (!(rcond > 1e-14))
    throw Error(ErrorCode::SolverSingular, "W is numerically singular (rcond " + std::to_string(rcond) + ")");
  Eigen::VectorXcd x(rhs.size());
  x.real() = W_lu_->solve(rhs.real());
  x.imag() = W_lu_->solve(rhs.imag());
  // one step of iterative refinement
  Eigen::VectorXcd r = rhs - apply_real(W_, x);
  x.real() += W_lu_->solve(r.real());
  x.imag() += W_lu_->solve(r.imag());
  r = rhs - apply_real(W_, x);
  const double bn = rhs.norm();
  const double rel = bn > 0 ? r.norm() / bn : r.norm();
  if (!x.allFinite()) throw Error(ErrorCode::SolverSingular, name + ": non-finite solution");
  diag_.push_back({name, rel, rcond});
  return x;
}

Eigen::VectorXcd LowFrequencySolver::solve_gram(const Eigen::VectorXcd& rhs) {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(model_.gram());
  if (ldlt.info() != Eigen::Success) throw Error(ErrorCode::SolverSingular, "Gram matrix factorization failed");
  Eigen::VectorXcd x(rhs.size());
  x.real() = ldlt.solve(rhs.real());
  x.imag() = ldlt.solve(rhs.imag());
  return x;
}

Eigen::VectorXd LowFrequencySolver::solve_W_loops(const Eigen::VectorXd& rhs, const std::string& name) {
  ensure_W();
  if (!W_loops_lu_) {
    loops_ = loop_basis(model_.mesh(), model_.basis());
    const Eigen::MatrixXd WL = W_ * loops_;
    W_loops_ = Eigen::MatrixXd(loops_.transpose() * WL);
    W_loops_lu_ = std::make_unique<Eigen::PartialPivLU<Eigen::MatrixXd>>(W_loops_);
  }
  const double rcond = W_loops_lu_->rcond();
  if (!(rcond > 1e-14))
    throw Error(ErrorCode::SolverSingular, "loop-projected W is numerically singular");
  const Eigen::VectorXd b = loops_.transpose() * rhs;
  Eigen::VectorXd y = W_loops_lu_->solve(b);
  y += W_loops_lu_->solve(Eigen::VectorXd(b - W_loops_ * y));
  const double bn = b.norm();
  const double rn = (b - W_loops_ * y).norm();
  diag_.push_back({name, bn > 0 ? rn / bn : rn, rcond});
  return loops_ * y;
}

Eigen::VectorXcd LowFrequencySolver::solve_psi0(const Eigen::VectorXcd& phi0) {
  ensure_Q();
  // The magnetic source i nu x H0 drives a divergence-free current. A plain
  // Galerkin solve leaks an O(h) spurious charge from it, which breaks the
  // parity of div psi0 and gives E0 an imaginary part. Solving that part on
  // the loop subspace keeps its discrete divergence exactly zero.
  const Vec3 H0 = cfg_.d.cross(cfg_.p);
  const Eigen::VectorXcd hrhs = galerkin_project(model_, [&H0](const Vec3&, const Vec3& nu) -> CVec3 {
    return nu.cross(H0).cast<cdouble>();
  });
  Eigen::VectorXcd psi = solve_W(-apply_real(Q_, phi0), "psi0");
  const Eigen::VectorXd psi_h = solve_W_loops(hrhs.real(), "psi0_loops");
  psi += kI * psi_h.cast<cdouble>();
  return psi;
}

Eigen::VectorXcd LowFrequencySolver::solve_psi_half(const Eigen::VectorXcd& phi0) {
  // N_half phi0 = C^{3/2} nu x (A1 phi0 + grad S3 div phi0), both fields are affine in x:
  //   A1[phi](x) = -i/(4 pi) int phi,   grad S3[s](x) = i/(12 pi) int (x - y) s(y).
  const double C = cfg_.c_tilde;
  const CVec3 a1 = (-kI / (4.0 * std::numbers::pi)) * integrate_density(model_, phi0);
  const Eigen::VectorXcd s = surface_divergence(model_.mesh(), model_.basis(), phi0);
  cdouble q = 0.0;
  CVec3 dip = CVec3::Zero();
  for (std::size_t t = 0; t < model_.panels(); ++t) {
    const Panel& P = model_.mesh().panels[t];
    q += s[static_cast<Eigen::Index>(t)] * P.area;
    dip += (s[static_cast<Eigen::Index>(t)] * P.area) * P.centroid.cast<cdouble>();
  }
  const cdouble c3 = kI / (12.0 * std::numbers::pi);
  Eigen::VectorXcd rhs = galerkin_project(model_, [&](const Vec3& x, const Vec3& nu) -> CVec3 {
    const CVec3 g3 = c3 * (x.cast<cdouble>() * q - dip);
    return std::pow(C, 1.5) * cross(nu.cast<cdouble>(), CVec3(a1 + g3));
  });
  return solve_W(-rhs, "psi_half");
}

Eigen::VectorXcd LowFrequencySolver::compute_phi1(const Eigen::VectorXcd& phi0, const Eigen::VectorXcd& psi0) {
  ensure_Q();
  const double C = cfg_.c_tilde;
  const CVec3 p = cfg_.p.cast<cdouble>();
  const Vec3 d = cfg_.d;
  Eigen::VectorXcd rhs = galerkin_project(model_, [&](const Vec3& x, const Vec3& nu) -> CVec3 {
    return cross(nu.cast<cdouble>(), CVec3(kI * x.dot(d) * p));
  });
  const Eigen::MatrixXd M2 = assemble_magnetic(model_, KernelOrder::quadratic2()).re;
  rhs -= C * apply_real(M2, phi0);
  rhs -= apply_real(Q_, psi0);
  return solve_gram(rhs);
}

Eigen::VectorXcd LowFrequencySolver::solve_psi1(const Eigen::VectorXcd& phi0, const Eigen::VectorXcd& psi0,
                                                const Eigen::VectorXcd& phi1) {
  ensure_Q();
  ensure_W();
  const double C = cfg_.c_tilde;
  const CVec3 H0 = cfg_.d.cross(cfg_.p).cast<cdouble>();
  const Vec3 d = cfg_.d;
  // i nu x H1 with H1 = i (d x p)(x . d)
  Eigen::VectorXcd rhs = galerkin_project(model_, [&](const Vec3& x, const Vec3& nu) -> CVec3 {
    return -x.dot(d) * cross(nu.cast<cdouble>(), H0);
  });
  rhs -= apply_real(Q_, phi1);

  // N1_21 phi0 = C^2 nu x (A2 + grad S4 div) phi0 - Q phi0 / C
  {
    Eigen::VectorXcd t = apply_real(
        assemble_vector_potential(model_, KernelOrder::quadratic2(), VectorPotentialOutput::NuCrossValue).re, phi0);
    const Eigen::VectorXcd s = surface_divergence(model_.mesh(), model_.basis(), phi0);
    t += apply_real(assemble_nu_cross_grad_single_layer(model_, KernelOrder::quartic4()).re, s);
    rhs -= C * C * t - apply_real(Q_, phi0) / C;
  }
  // N1_22 psi0 = (I/2 - M0 + C^2 M2) psi0, with M0 psi0 = W psi0 / C - G psi0 / 2
  {
    const Eigen::VectorXcd Gpsi = apply_real(model_.gram(), psi0);
    const Eigen::VectorXcd M0psi = apply_real(W_, psi0) / C - 0.5 * Gpsi;
    const Eigen::VectorXcd M2psi = apply_real(assemble_magnetic(model_, KernelOrder::quadratic2()).re, psi0);
    rhs -= 0.5 * Gpsi - M0psi + C * C * M2psi;
  }
  return solve_W(rhs, "psi1");
}

DensityExpansion LowFrequencySolver::solve(bool first_order) {
  DensityExpansion ex;
  ex.phi0 = compute_phi0();
  ex.psi0 = solve_psi0(ex.phi0);
  ex.phi_half = Eigen::VectorXcd::Zero(ex.phi0.size());
  ex.psi_half = solve_psi_half(ex.phi0);
  if (first_order) {
    ex.phi1 = compute_phi1(ex.phi0, ex.psi0);
    ex.psi1 = solve_psi1(ex.phi0, ex.psi0, ex.phi1);
  }
  ex.diagnostics = diag_;
  return ex;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SeriesReport check_series_consistency(const TwoSphereConfig& cfg, const BoundaryModel& model,
                                      const std::vector<double>& k_list) {
  using MC = Eigen::MatrixXcd;
  const double C = cfg.c_tilde;
  const Eigen::Index E = static_cast<Eigen::Index>(model.edges());
  const MC Gm = Eigen::MatrixXd(model.gram()).cast<cdouble>();
  const MC Div = Eigen::MatrixXd(model.divergence()).cast<cdouble>();

  auto L = [&](KernelOrder o) {  // nu x (A + grad S div) pieces, Galerkin
    return std::pair<MC, MC>{
        assemble_vector_potential(model, o, VectorPotentialOutput::NuCrossValue).to_complex(),
        assemble_nu_cross_grad_single_layer(model, o).to_complex() * Div};
  };
  const MC M0 = assemble_magnetic(model, KernelOrder::static0()).to_complex();
  const MC M2 = assemble_magnetic(model, KernelOrder::quadratic2()).to_complex();
  const auto [A0, S0d] = L(KernelOrder::static0());
  const auto [A2, S2d] = L(KernelOrder::quadratic2());
  const MC A1 = assemble_vector_potential(model, KernelOrder::linear1(), VectorPotentialOutput::NuCrossValue).to_complex();
  const MC S3d = assemble_nu_cross_grad_single_layer(model, KernelOrder::cubic3()).to_complex() * Div;
  const MC S4d = assemble_nu_cross_grad_single_layer(model, KernelOrder::quartic4()).to_complex() * Div;

  const MC Q = C * (A0 + S2d);
  const MC W = C * (0.5 * Gm + M0);
  const MC Z = MC::Zero(E, E);
  auto block = [&](const MC& a, const MC& b, const MC& c, const MC& d) {
    MC out(2 * E, 2 * E);
    out << a, b, c, d;
    return out;
  };
  const MC N0 = block(Gm, Z, Q, W);
  const MC Nh = block(Z, Z, std::pow(C, 1.5) * (A1 + S3d), Z);
  const MC N1 = block(C * M2, Q, C * C * (A2 + S4d) - Q / C, 0.5 * Gm - M0 + C * C * M2);

  SeriesReport rep;
  std::vector<double> res_without;
  for (double k : k_list) {
    const double kc = std::sqrt(C * k);
    const MC Mk = assemble_magnetic(model, KernelOrder::full(k)).to_complex();
    const MC Mkc = assemble_magnetic(model, KernelOrder::full(kc)).to_complex();
    const auto [Ak, Sk] = L(KernelOrder::full(k));
    const auto [Akc, Skc] = L(KernelOrder::full(kc));
    const MC Ldiff = kc * kc * Akc - k * k * Ak + (Skc - Sk);
    const MC Nk = block(Gm + Mkc - Mk, Ldiff, Ldiff / k,
                        (0.5 * (kc * kc + k * k) * Gm + kc * kc * Mkc - k * k * Mk) / k);
    const MC trunc0 = N0 + std::sqrt(k) * Nh;
    rep.k.push_back(k);
    rep.residual.push_back((Nk - trunc0 - k * N1).norm());
    res_without.push_back((Nk - trunc0).norm());
  }
  rep.exponent = loglog_slope(rep.k, rep.residual);
  rep.exponent_without_n1 = loglog_slope(rep.k, res_without);
  return rep;
}

}  // namespace twosphere
