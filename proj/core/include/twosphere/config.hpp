#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <filesystem>
#include <map>
#include <string>

namespace twosphere {

using Vec3 = Eigen::Vector3d;
using RawConfig = std::map<std::string, std::string>;

enum class SphereId : int { One = 1, Two = 2 };

struct MeshControls {
  int n_theta = 26;
  int n_phi = 52;
  double grading_exponent = 2.0;
  int near_quad_order = 4;  // Gauss order of the product rule used on near panel pairs

  void validate() const;
};

struct TwoSphereConfig {
  double r = 1.0;
  double epsilon = 0.05;
  double omega = 0.005;
  double c_tilde = 1.0;
  Vec3 d{0.0, 1.0, 0.0};
  Vec3 p{1.0, 0.0, 1.0};
  MeshControls mesh;

  // Centres are derived from r and epsilon, never stored.
  Vec3 center(SphereId s) const {
    const double x = r + 0.5 * epsilon;
    return s == SphereId::One ? Vec3(-x, 0.0, 0.0) : Vec3(x, 0.0, 0.0);
  }
  double k() const { return omega; }
  double eps_c() const { return c_tilde / omega; }

  void validate() const;
};

// Parses `key = value` lines; `#` starts a comment.
RawConfig read_key_value_file(const std::filesystem::path& path);
RawConfig parse_key_value_text(const std::string& text);

TwoSphereConfig build_config(const RawConfig& raw);
RawConfig to_raw(const TwoSphereConfig& cfg);

}  // namespace twosphere
