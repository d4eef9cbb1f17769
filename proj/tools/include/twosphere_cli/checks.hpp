#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twosphere/config.hpp"
#include "twosphere/fields.hpp"
#include "twosphere/lowfreq.hpp"
#include "twosphere/operators.hpp"

namespace twosphere::cli {

// One named validation check. `measured` is compared against `threshold`
// with `<=` unless a lower bound is given (then lower <= measured <= threshold).
struct Check {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  double lower = -1.0;  // < 0: no lower bound
  bool pass = false;
  std::string detail;
};

Check make_check(std::string name, double measured, double threshold, std::string detail = {});
Check make_range_check(std::string name, double measured, double lower, double upper, std::string detail = {});
bool all_pass(const std::vector<Check>& checks);

// A solved configuration: mesh, densities and field evaluator, built once.
class SolvedCase {
 public:
  SolvedCase(const TwoSphereConfig& cfg, bool first_order);
  const TwoSphereConfig& config() const { return cfg_; }
  const BoundaryModel& model() const { return model_; }
  const DensityExpansion& densities() const { return ex_; }
  const FieldEvaluator& fields() const { return fe_; }
  const NormalTraces& traces();

 private:
  TwoSphereConfig cfg_;
  BoundaryModel model_;
  DensityExpansion ex_;
  FieldEvaluator fe_;
  std::optional<NormalTraces> traces_;
};

// Unit-sphere K* spectrum at the given resolution (uniform latitudes) and
// under one uniform refinement.
std::vector<Check> np_spectrum_checks(const MeshControls& mc);

// Jump relations for sigma = 1 on sphere 1 and phi = nu x p.
std::vector<Check> jump_checks(const BoundaryModel& model, const Vec3& p);

// Antipodal identities of the densities and of (nu . E0)+; psi1 needs first order.
std::vector<Check> density_reflection_checks(SolvedCase& sc);

// Matrix reflection identities of the assembled operators and the mirror mesh.
std::vector<Check> operator_reflection_checks(const BoundaryModel& model);

// Interior field, interior normal trace, FD curl/div, flux and charge neutrality.
std::vector<Check> leading_order_checks(SolvedCase& sc);

// |E0(O)| against the bispherical series.
Check oracle_check(SolvedCase& sc);

// Fitted decay exponent of the truncated operator expansion, on a coarse
// companion mesh of cfg.
Check series_check(const TwoSphereConfig& cfg);

// ||psi_half|| relative to ||psi0||.
Check zero_half_order_check(const SolvedCase& sc);

// Number of latitude bands inside the gap cap (at least 3 needed).
Check gap_resolution_check(const TwoSphereConfig& cfg);

}  // namespace twosphere::cli
