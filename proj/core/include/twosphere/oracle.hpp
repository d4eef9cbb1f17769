#pragma once

#include <optional>
#include <vector>

#include "twosphere/config.hpp"

namespace twosphere {

// Series solution of the two-sphere conductor problem
//   Laplace(u) = 0 outside, u constant on each sphere, zero net flux per
//   sphere, u - p.x -> 0 at infinity,
// in bispherical coordinates (mu, eta, angle) with foci (+-a, 0, 0).
// The axial part (along x) and the transverse part (in the y-z plane) are
// separate series:
//   axial:      u = p1 x + sqrt(cosh mu - cos eta) sum_n B_n sinh((n+1/2) mu) P_n(cos eta)
//   transverse: u = pt s + sqrt(cosh mu - cos eta) cos(angle) sum_n A_n cosh((n+1/2) mu) P_n^1(cos eta)
class BisphericalSolution {
 public:
  double r = 1.0;
  double epsilon = 0.0;
  Vec3 p = Vec3::Zero();
  double a = 0.0;    // focal half-distance
  double mu0 = 0.0;  // sphere 2 is mu = mu0, sphere 1 is mu = -mu0
  std::vector<double> B;  // axial coefficients (times p1)
  std::vector<double> A;  // transverse coefficients (times |p_t|), A[0] = 0
  Vec3 transverse_dir = Vec3::UnitZ();
  double p_axial = 0.0, p_transverse = 0.0;
  double U = 0.0;    // potential of sphere 2 in the axial problem; sphere 1 has -U
  int n_terms = 0;
  double tail_estimate = 0.0;  // relative size of the truncated tail at the midpoint

  double potential(const Vec3& x) const;
  // Richardson-extrapolated central differences of the potential.
  Vec3 gradient(const Vec3& x) const;
  // Per-sphere constant potentials C1, C2.
  double sphere_potential(SphereId s) const;
};

// n_terms fixed when given (>= 10), otherwise chosen adaptively; throws
// TruncationInsufficient when the tail stays above 1e-8 at the cap.
BisphericalSolution solve_bispherical(double r, double epsilon, const Vec3& p,
                                      std::optional<int> n_terms = std::nullopt);

// Max deviation of u from its sphere constant over a lat-long sample grid.
double boundary_residual(const BisphericalSolution& s, int n_lat = 24, int n_lon = 24);
// Integral of du/dnu over sphere s by a product Gauss rule.
double sphere_flux(const BisphericalSolution& s, SphereId sphere, int n_lat = 48, int n_lon = 48);

}  // namespace twosphere
