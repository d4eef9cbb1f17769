#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "twosphere/config.hpp"
#include "twosphere/fit.hpp"
#include "twosphere_cli/checks.hpp"

namespace twosphere::cli {

enum ExitCode : int { Ok = 0, ValidationFailed = 1, ConfigError = 2, SolverFailure = 3 };

struct Options {
  std::filesystem::path config;
  std::optional<std::filesystem::path> probes;
  std::vector<double> eps_grid;
  std::filesystem::path out = ".";
  int threads = 1;
  bool dump_operators = false;
};

// "0.2,0.1,0.05" -> {0.2, 0.1, 0.05}; throws InvalidValue on junk.
std::vector<double> parse_eps_grid(const std::string& text);

// Probe file: one point per line as "x,y,z" or "x y z"; '#' comments and a
// non-numeric header line are skipped.
std::vector<Vec3> read_probes(const std::filesystem::path& path);

// Grading exponent that puts the first latitude band at the gap half-width:
// max(g_cfg, log(pi / (eps / 2r)) / log(n_theta)), clamped to [1, 4].
double gap_resolved_grading(const MeshControls& mc, double epsilon, double r);

// BEM runs only down to this gap; smaller gaps use the series alone.
inline constexpr double kBemEpsilonFloor = 0.005;

struct SweepRow {
  double epsilon = 0.0;
  bool bem = false;        // BEM attempted at this epsilon
  std::string failure;     // empty when the BEM row succeeded
  double grading = 0.0;
  long long panels = 0;
  double e0_mid = 0.0;     // |E0(O)|
  double e1_mid = 0.0;     // |E1(O)|
  double oracle_mid = 0.0; // |grad u(O)|
  double wall_time_s = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // epsilon descending
  AsymptoticFit oracle_fit;
  std::optional<AsymptoticFit> bem_fit;
  double e1_ratio = 0.0;   // max/min |E1(O)| over successful BEM rows
  double e0_growth = 0.0;  // max/min |E0(O)| over successful BEM rows
};

SweepResult run_sweep(const TwoSphereConfig& base, std::vector<double> grid);

// The sweep CSV carries no timings so that it is reproducible byte for byte.
void write_sweep_csv(std::ostream& out, const SweepResult& s);

// Validation suite: gap resolution first, then everything that needs a solve.
std::vector<Check> validation_suite(const TwoSphereConfig& cfg);

int cmd_solve(const Options& opt);
int cmd_sweep(const Options& opt);
int cmd_validate(const Options& opt);

}  // namespace twosphere::cli
