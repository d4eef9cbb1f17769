#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>
#include <Eigen/SparseCore>

#include "twosphere/config.hpp"
#include "twosphere/operators.hpp"

namespace twosphere {

struct SolveDiagnostics {
  std::string name;
  double relative_residual = 0.0;
  double rcond_estimate = 0.0;
};

// Edge-basis coefficients of the order-by-order densities.
struct DensityExpansion {
  Eigen::VectorXcd phi0, psi0, phi_half, psi_half, phi1, psi1;
  std::vector<SolveDiagnostics> diagnostics;
  bool has_first_order() const { return phi1.size() > 0; }
};

// Owns the operators of the order-0 system and solves the density equations
//   order 0:   phi0 = nu x p,                 W psi0 = i nu x H0 - Q phi0
//              (the i nu x H0 part is divergence free and is solved on the loop subspace)
//   order 1/2: phi_half = 0,                  W psi_half = -N_half phi0
//   order 1:   phi1 = nu x E1i - C M2 phi0 - Q psi0
//              W psi1 = i nu x H1 - Q phi1 - N1_21 phi0 - N1_22 psi0
// with Q = C nu x (A0 + grad S2 div), W = C (I/2 + M0) and C = c_tilde.
class LowFrequencySolver {
 public:
  LowFrequencySolver(const TwoSphereConfig& cfg, const BoundaryModel& model);

  Eigen::VectorXcd compute_phi0() const;
  Eigen::VectorXcd solve_psi0(const Eigen::VectorXcd& phi0);
  Eigen::VectorXcd solve_psi_half(const Eigen::VectorXcd& phi0);
  Eigen::VectorXcd compute_phi1(const Eigen::VectorXcd& phi0, const Eigen::VectorXcd& psi0);
  Eigen::VectorXcd solve_psi1(const Eigen::VectorXcd& phi0, const Eigen::VectorXcd& psi0,
                              const Eigen::VectorXcd& phi1);

  // Runs all orders (first order optional).
  DensityExpansion solve(bool first_order);

  const std::vector<SolveDiagnostics>& diagnostics() const { return diag_; }
  const Eigen::MatrixXd& W() ;
  const Eigen::MatrixXd& Q();

 private:
  void ensure_W();
  void ensure_Q();
  Eigen::VectorXcd solve_W(const Eigen::VectorXcd& rhs, const std::string& name);
  Eigen::VectorXcd solve_gram(const Eigen::VectorXcd& rhs);
  Eigen::VectorXd solve_W_loops(const Eigen::VectorXd& rhs, const std::string& name);

  TwoSphereConfig cfg_;
  const BoundaryModel& model_;
  Eigen::MatrixXd W_;
  std::unique_ptr<Eigen::PartialPivLU<Eigen::MatrixXd>> W_lu_;
  Eigen::MatrixXd Q_;
  Eigen::SparseMatrix<double> loops_;
  Eigen::MatrixXd W_loops_;
  std::unique_ptr<Eigen::PartialPivLU<Eigen::MatrixXd>> W_loops_lu_;
  std::vector<SolveDiagnostics> diag_;
};

// ||N^k - (N0 + N_half sqrt(k) + N1 k)||_F for each k, with the fitted
// log-log slope over the k list.
struct SeriesReport {
  std::vector<double> k;
  std::vector<double> residual;
  double exponent = 0.0;
  double exponent_without_n1 = 0.0;  // slope when N1 is dropped (self-test)
};
SeriesReport check_series_consistency(const TwoSphereConfig& cfg, const BoundaryModel& model,
                                      const std::vector<double>& k_list);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace twosphere
