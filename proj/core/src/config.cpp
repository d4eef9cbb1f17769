#include "twosphere/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "twosphere/error.hpp"
#include "twosphere/io.hpp"

namespace twosphere {
namespace {

const std::set<std::string> kRequired = {"r",   "epsilon", "omega", "c_tilde", "d_x", "d_y",
                                         "d_z", "p_x",     "p_y",   "p_z"};
const std::set<std::string> kOptional = {"n_theta", "n_phi", "grading_exponent",
                                         "near_quad_order"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const RawConfig& raw, const std::string& key) {
  const std::string& text = raw.at(key);
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw Error(ErrorCode::InvalidValue, "key '" + key + "' is not a finite number: " + text);
  return v;
}

int to_int(const RawConfig& raw, const std::string& key) {
  const std::string& text = raw.at(key);
  int v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw Error(ErrorCode::InvalidValue, "key '" + key + "' is not an integer: " + text);
  return v;
}

}  // namespace

void MeshControls::validate() const {
  if (n_theta < 8) throw Error(ErrorCode::InvalidValue, "n_theta must be >= 8");
  if (n_phi < 16) throw Error(ErrorCode::InvalidValue, "n_phi must be >= 16");
  if (n_phi % 2 != 0) throw Error(ErrorCode::InvalidValue, "n_phi must be even");
  if (!(grading_exponent >= 1.0 && grading_exponent <= 4.0))
    throw Error(ErrorCode::InvalidValue, "grading_exponent must lie in [1, 4]");
  if (near_quad_order < 1 || near_quad_order > 12)
    throw Error(ErrorCode::InvalidValue, "near_quad_order must lie in [1, 12]");
}

void TwoSphereConfig::validate() const {
  if (!(r > 0.0)) throw Error(ErrorCode::NonPositive, "r must be positive");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::NonPositive, "epsilon must be positive");
  if (!(omega > 0.0)) throw Error(ErrorCode::NonPositive, "omega must be positive");
  if (!(c_tilde > 0.0)) throw Error(ErrorCode::NonPositive, "c_tilde must be positive");
  if (std::abs(d.norm() - 1.0) > 1e-12)
    throw Error(ErrorCode::InvalidValue, "incident direction d must be a unit vector");
  if (std::abs(p.dot(d)) > 1e-12)
    throw Error(ErrorCode::InvalidPolarization, "polarization p must be orthogonal to d");
  mesh.validate();
}

RawConfig parse_key_value_text(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::InvalidValue, "line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw Error(ErrorCode::InvalidValue, "line " + std::to_string(lineno) + ": empty key or value");
    if (raw.count(key))
      throw Error(ErrorCode::InvalidValue, "duplicate key '" + key + "'");
    raw.emplace(std::move(key), std::move(value));
  }
  return raw;
}

RawConfig read_key_value_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_key_value_text(ss.str());
}

TwoSphereConfig build_config(const RawConfig& raw) {
  for (const auto& key : kRequired)
    if (!raw.count(key)) throw Error(ErrorCode::MissingKey, "missing required key '" + key + "'");
  for (const auto& [key, value] : raw)
    if (!kRequired.count(key) && !kOptional.count(key))
      throw Error(ErrorCode::InvalidValue, "unknown key '" + key + "'");

  TwoSphereConfig cfg;
  cfg.r = to_double(raw, "r");
  cfg.epsilon = to_double(raw, "epsilon");
  cfg.omega = to_double(raw, "omega");
  cfg.c_tilde = to_double(raw, "c_tilde");
  cfg.d = Vec3(to_double(raw, "d_x"), to_double(raw, "d_y"), to_double(raw, "d_z"));
  cfg.p = Vec3(to_double(raw, "p_x"), to_double(raw, "p_y"), to_double(raw, "p_z"));
  if (raw.count("n_theta")) cfg.mesh.n_theta = to_int(raw, "n_theta");
  if (raw.count("n_phi")) cfg.mesh.n_phi = to_int(raw, "n_phi");
  if (raw.count("grading_exponent")) cfg.mesh.grading_exponent = to_double(raw, "grading_exponent");
  if (raw.count("near_quad_order")) cfg.mesh.near_quad_order = to_int(raw, "near_quad_order");
  cfg.validate();
  return cfg;
}

RawConfig to_raw(const TwoSphereConfig& cfg) {
  RawConfig raw;
  raw["r"] = format_number(cfg.r);
  raw["epsilon"] = format_number(cfg.epsilon);
  raw["omega"] = format_number(cfg.omega);
  raw["c_tilde"] = format_number(cfg.c_tilde);
  raw["d_x"] = format_number(cfg.d.x());
  raw["d_y"] = format_number(cfg.d.y());
  raw["d_z"] = format_number(cfg.d.z());
  raw["p_x"] = format_number(cfg.p.x());
  raw["p_y"] = format_number(cfg.p.y());
  raw["p_z"] = format_number(cfg.p.z());
  raw["n_theta"] = std::to_string(cfg.mesh.n_theta);
  raw["n_phi"] = std::to_string(cfg.mesh.n_phi);
  raw["grading_exponent"] = format_number(cfg.mesh.grading_exponent);
  raw["near_quad_order"] = std::to_string(cfg.mesh.near_quad_order);
  return raw;
}

}  // namespace twosphere
