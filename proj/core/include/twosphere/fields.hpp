#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "twosphere/config.hpp"
#include "twosphere/lowfreq.hpp"
#include "twosphere/operators.hpp"

namespace twosphere {

enum class FieldRegion { Exterior, Inside1, Inside2 };
std::string_view to_string(FieldRegion r);

FieldRegion classify(const TwoSphereConfig& cfg, const Vec3& x);
// Distance from x to the nearest sphere surface.
double boundary_distance(const TwoSphereConfig& cfg, const Vec3& x);

struct FieldDiagnostics {
  double h_fd = 0.0;
  double curl_residual = 0.0;  // |curl E0| by central differences
  double div_residual = 0.0;   // |div E0|
};

struct FieldProbe {
  Vec3 point = Vec3::Zero();
  FieldRegion region = FieldRegion::Exterior;
  CVec3 E0 = CVec3::Zero();
  CVec3 E1 = CVec3::Zero();
  std::optional<FieldDiagnostics> diagnostics;
  CVec3 E_total(double k) const { return E0 + k * E1; }
};

// Per-panel normal traces of E0 at centroids.
struct NormalTraces {
  Eigen::VectorXcd exterior;  // (nu . E0)+
  Eigen::VectorXcd interior;  // (nu . E0)-
  double sup_norm() const;    // max |(nu . E0)+|, the surface size of E0
  // Integral of (nu . E0)+ over sphere s.
  cdouble flux(const SurfaceMesh& mesh, SphereId s) const;
};

// Flux of E0 through a closed surface that encloses one sphere only.
struct FluxReport {
  double flux = 0.0;      // integral of nu . E0
  double abs_flux = 0.0;  // integral of |nu . E0|, the scale for neutrality
  double relative() const { return abs_flux > 0 ? std::abs(flux) / abs_flux : std::abs(flux); }
};

// Evaluates the fields represented by a solved density expansion.
//   exterior: E0 = p + curl A0[phi0] + grad S0[div psi0]
//             E1 = E1i + curl A0[phi1] + grad S0[div psi1]
//   interior: E0 = curl A0[phi0] + grad S0[div psi0]
//             E1 = curl A0[phi1] + C curl A2[phi0] + C A0[psi0]
//                  + grad S0[div psi1] + C grad S2[div psi0]
class FieldEvaluator {
 public:
  FieldEvaluator(const TwoSphereConfig& cfg, const BoundaryModel& model, const DensityExpansion& ex);

  // Both throw TooCloseToBoundary when x is within one local panel diameter of the surface.
  CVec3 E0(const Vec3& x) const;
  CVec3 E1(const Vec3& x) const;

  // Central-difference curl and divergence of E0 with step h; requires a
  // boundary distance of at least 10 h.
  FieldDiagnostics diagnostics(const Vec3& x, double h_fd) const;
  // Default step 1e-4 r, shrunk so the stencil stays 10 steps from the surface.
  double default_step(const Vec3& x) const;

  FieldProbe probe(const Vec3& x, bool with_diagnostics = true) const;
  std::vector<FieldProbe> probe_all(const std::vector<Vec3>& xs, bool with_diagnostics = true) const;

  NormalTraces normal_traces() const;

  // Flux through the sphere of radius 5r + eps/2 that touches the gap
  // midpoint and contains sphere s. The gap-side cap is sampled densely.
  FluxReport enclosing_flux(SphereId s, int n_lat = 96, int n_lon = 48) const;

  void check_distance(const Vec3& x) const;

 private:
  CVec3 layer_field(const Vec3& x, const Eigen::VectorXcd& phi, const Eigen::VectorXcd& div_psi) const;

  TwoSphereConfig cfg_;
  const BoundaryModel& model_;
  const DensityExpansion& ex_;
  Eigen::VectorXcd div_psi0_, div_psi1_;
};

}  // namespace twosphere
