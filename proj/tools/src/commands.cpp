#include "twosphere_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "twosphere/error.hpp"
#include "twosphere/fields.hpp"
#include "twosphere/geometry.hpp"
#include "twosphere/io.hpp"
#include "twosphere/lowfreq.hpp"
#include "twosphere/operators.hpp"
#include "twosphere/oracle.hpp"
#include "twosphere/parallel.hpp"

namespace twosphere::cli {
namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr int kSchemaVersion = 1;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot write " + path.string());
  return f;
}

void write_json(const std::filesystem::path& path, const json& j) {
  auto f = open_out(path);
  f << j.dump(2) << '\n';
}

json config_json(const TwoSphereConfig& cfg) {
  json j = json::object();
  for (const auto& [k, v] : to_raw(cfg)) j[k] = v;
  return j;
}

json fit_json(const AsymptoticFit& f) {
  return {{"a", f.a},
          {"b", f.b},
          {"r_squared", f.r_squared},
          {"compensated_ratio", f.compensated_ratio},
          {"eps_list", f.eps_list},
          {"values", f.values}};
}

json vec_json(const CVec3& v) {
  json j = json::array();
  for (int i = 0; i < 3; ++i) j.push_back({v[i].real(), v[i].imag()});
  return j;
}

json check_json(const Check& c) {
  json j = {{"name", c.name}, {"pass", c.pass}, {"measured", c.measured}, {"threshold", c.threshold}};
  if (c.lower >= 0.0) j["lower"] = c.lower;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

TwoSphereConfig load_config(const Options& opt) { return build_config(read_key_value_file(opt.config)); }

int report_error(const Error& e) {
  std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
  return is_config_error(e.code()) ? ConfigError : SolverFailure;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

std::vector<double> parse_eps_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used == 0 || used != item.size() || !(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorCode::InvalidValue, "bad epsilon grid entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidValue, "empty epsilon grid");
  return out;
}

std::vector<Vec3> read_probes(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read probe file " + path.string());
  std::vector<Vec3> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    ls.imbue(std::locale::classic());
    std::string first;
    if (!(ls >> first)) continue;
    Vec3 x;
    std::istringstream row(line);
    row.imbue(std::locale::classic());
    if (!(row >> x[0] >> x[1] >> x[2])) {
      if (pts.empty() && lineno == 1) continue;  // header
      throw Error(ErrorCode::InvalidValue, path.string() + ":" + std::to_string(lineno) + ": expected x y z");
    }
    std::string extra;
    if (row >> extra)
      throw Error(ErrorCode::InvalidValue, path.string() + ":" + std::to_string(lineno) + ": trailing data");
    pts.push_back(x);
  }
  return pts;
}

double gap_resolved_grading(const MeshControls& mc, double epsilon, double r) {
  const double g = std::log(std::numbers::pi / (epsilon / (2.0 * r))) / std::log(static_cast<double>(mc.n_theta));
  return std::clamp(std::max(mc.grading_exponent, g), 1.0, 4.0);
}

SweepResult run_sweep(const TwoSphereConfig& base, std::vector<double> grid) {
  std::sort(grid.begin(), grid.end(), std::greater<>());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  SweepResult res;
  // One epsilon at a time: a single dense solve already uses most of the memory.
  for (double eps : grid) {
    SweepRow row;
    row.epsilon = eps;
    const auto t0 = Clock::now();
    row.oracle_mid = solve_bispherical(base.r, eps, base.p).gradient(Vec3::Zero()).norm();
    if (eps >= kBemEpsilonFloor) {
      row.bem = true;
      TwoSphereConfig cfg = base;
      cfg.epsilon = eps;
      cfg.mesh.grading_exponent = gap_resolved_grading(base.mesh, eps, base.r);
      row.grading = cfg.mesh.grading_exponent;
      try {
        const BoundaryModel model(build_mesh(cfg), cfg.mesh.near_quad_order);
        row.panels = static_cast<long long>(model.panels());
        LowFrequencySolver solver(cfg, model);
        const DensityExpansion ex = solver.solve(true);
        const FieldEvaluator fe(cfg, model, ex);
        row.e0_mid = fe.E0(Vec3::Zero()).norm();
        row.e1_mid = fe.E1(Vec3::Zero()).norm();
      } catch (const Error& e) {
        row.failure = std::string(to_string(e.code()));
      }
    }
    row.wall_time_s = seconds_since(t0);
    res.rows.push_back(row);
  }

  std::vector<double> eo, vo, eb, vb, v1;
  for (const SweepRow& r : res.rows) {
    eo.push_back(r.epsilon);
    vo.push_back(r.oracle_mid);
    if (r.bem && r.failure.empty()) {
      eb.push_back(r.epsilon);
      vb.push_back(r.e0_mid);
      v1.push_back(r.e1_mid);
    }
  }
  res.oracle_fit = asymptotic_model(eo, vo);
  try {
    res.bem_fit = asymptotic_model(eb, vb);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateFit) throw;
  }
  if (!vb.empty()) {
    const auto [n0, x0] = std::minmax_element(vb.begin(), vb.end());
    const auto [n1, x1] = std::minmax_element(v1.begin(), v1.end());
    res.e0_growth = *x0 / *n0;
    res.e1_ratio = *x1 / *n1;
  }
  return res;
}

void write_sweep_csv(std::ostream& out, const SweepResult& s) {
  CsvWriter w(out, {"epsilon", "bem_status", "grading_exponent", "panels", "abs_E0_mid", "abs_E1_mid",
                    "oracle_abs_grad_u_mid", "compensated_bem", "compensated_oracle"});
  for (const SweepRow& r : s.rows) {
    const double comp = r.epsilon * std::abs(std::log(r.epsilon));
    const bool ok = r.bem && r.failure.empty();
    w.field(r.epsilon);
    w.field(std::string(!r.bem ? "oracle_only" : ok ? "ok" : "failed=" + r.failure));
    if (r.bem) {
      w.field(r.grading);
      w.field(r.panels);
    } else {
      w.field(std::string()).field(std::string());
    }
    if (ok) {
      w.field(r.e0_mid).field(r.e1_mid);
    } else {
      w.field(std::string()).field(std::string());
    }
    w.field(r.oracle_mid);
    if (ok) {
      w.field(r.e0_mid * comp);
    } else {
      w.field(std::string());
    }
    w.field(r.oracle_mid * comp);
    w.end_row();
  }
}

std::vector<Check> validation_suite(const TwoSphereConfig& cfg) {
  std::vector<Check> checks{gap_resolution_check(cfg)};
  if (!checks.back().pass) return checks;
  auto add = [&checks](std::vector<Check> more) {
    for (auto& c : more) checks.push_back(std::move(c));
  };
  add(np_spectrum_checks(cfg.mesh));
  SolvedCase sc(cfg, true);
  add(jump_checks(sc.model(), cfg.p));
  add(operator_reflection_checks(sc.model()));
  add(density_reflection_checks(sc));
  add(leading_order_checks(sc));
  checks.push_back(oracle_check(sc));
  checks.push_back(zero_half_order_check(sc));
  checks.push_back(series_check(cfg));
  return checks;
}

int cmd_solve(const Options& opt) {
  try {
    const TwoSphereConfig cfg = load_config(opt);
    std::vector<Vec3> probes;
    if (opt.probes) probes = read_probes(*opt.probes);
    ensure_dir(opt.out);
    const auto t0 = Clock::now();

    const BoundaryModel model(build_mesh(cfg), cfg.mesh.near_quad_order);
    LowFrequencySolver solver(cfg, model);
    const DensityExpansion ex = solver.solve(true);
    if (opt.dump_operators) {
      const auto dir = opt.out / "operators";
      ensure_dir(dir);
      const Eigen::MatrixXd none;
      dump_matrix_binary(dir / "W.bin", solver.W(), none);
      dump_matrix_binary(dir / "Q.bin", solver.Q(), none);
      dump_matrix_binary(dir / "K_star.bin", assemble_adjoint_np(model).re, none);
    }
    const FieldEvaluator fe(cfg, model, ex);

    struct ProbeRow {
      FieldProbe pr;
      std::string failure;
    };
    std::vector<ProbeRow> rows(probes.size());
    parallel_for(probes.size(), [&](std::size_t i) {
      rows[i].pr.point = probes[i];
      rows[i].pr.region = classify(cfg, probes[i]);
      try {
        rows[i].pr = fe.probe(probes[i], true);
      } catch (const Error& e) {
        rows[i].failure = std::string(to_string(e.code()));
      }
    });

    {
      auto f = open_out(opt.out / "probes.csv");
      std::vector<std::string> header{"x", "y", "z", "region", "status"};
      for (const char* name : {"E0", "E1"})
        for (const char* c : {"x", "y", "z"})
          for (const char* part : {"re", "im"}) header.push_back(std::string(part) + "_" + name + c);
      for (const char* h : {"abs_E0", "abs_E1", "curl_residual", "div_residual"}) header.emplace_back(h);
      CsvWriter w(f, header);
      for (const ProbeRow& r : rows) {
        for (int i = 0; i < 3; ++i) w.field(r.pr.point[i]);
        w.field(std::string(to_string(r.pr.region)));
        if (!r.failure.empty()) {
          w.field("failed=" + r.failure);
          for (std::size_t i = 5; i < header.size(); ++i) w.field(std::string());
        } else {
          w.field(std::string("ok"));
          for (const CVec3* v : {&r.pr.E0, &r.pr.E1})
            for (int i = 0; i < 3; ++i) w.field((*v)[i].real()).field((*v)[i].imag());
          w.field(r.pr.E0.norm()).field(r.pr.E1.norm());
          w.field(r.pr.diagnostics->curl_residual).field(r.pr.diagnostics->div_residual);
        }
        w.end_row();
      }
    }

    const Vec3 O = Vec3::Zero();
    const CVec3 e0 = fe.E0(O), e1 = fe.E1(O);
    const double oracle = solve_bispherical(cfg.r, cfg.epsilon, cfg.p).gradient(O).norm();
    json solves = json::array();
    for (const auto& d : ex.diagnostics)
      solves.push_back({{"name", d.name}, {"relative_residual", d.relative_residual}, {"rcond", d.rcond_estimate}});
    long long failed = 0;
    for (const auto& r : rows) failed += r.failure.empty() ? 0 : 1;
    json summary = {
        {"schema_version", kSchemaVersion},
        {"command", "solve"},
        {"config", config_json(cfg)},
        {"mesh", {{"panels", model.panels()}, {"edges", model.edges()}}},
        {"density_norms",
         {{"phi0", ex.phi0.norm()},
          {"psi0", ex.psi0.norm()},
          {"phi_half", ex.phi_half.norm()},
          {"psi_half", ex.psi_half.norm()},
          {"phi1", ex.phi1.norm()},
          {"psi1", ex.psi1.norm()}}},
        {"solves", solves},
        {"midpoint",
         {{"E0", vec_json(e0)},
          {"E1", vec_json(e1)},
          {"abs_E0", e0.norm()},
          {"abs_E1", e1.norm()},
          {"oracle_abs_grad_u", oracle}}},
        {"probes", {{"count", rows.size()}, {"failed", failed}}},
        {"wall_time_s", seconds_since(t0)}};
    write_json(opt.out / "summary.json", summary);
    std::cout << "|E0(O)| = " << format_number(e0.norm()) << "  |E1(O)| = " << format_number(e1.norm())
              << "  oracle |grad u(O)| = " << format_number(oracle) << '\n';
    return Ok;
  } catch (const Error& e) {
    return report_error(e);
  }
}

int cmd_sweep(const Options& opt) {
  try {
    const TwoSphereConfig cfg = load_config(opt);
    std::vector<double> grid = opt.eps_grid;
    if (grid.empty()) grid = {0.2, 0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001};
    const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
    if (*hi < 10.0 * *lo) throw Error(ErrorCode::InvalidValue, "epsilon grid must span at least one decade");
    ensure_dir(opt.out);

    const SweepResult s = run_sweep(cfg, grid);
    {
      auto f = open_out(opt.out / "sweep.csv");
      write_sweep_csv(f, s);
    }
    json timings = json::array();
    for (const auto& r : s.rows) timings.push_back({{"epsilon", r.epsilon}, {"wall_time_s", r.wall_time_s}});
    write_json(opt.out / "sweep_timings.json", {{"schema_version", kSchemaVersion}, {"rows", timings}});
    json fit = {{"schema_version", kSchemaVersion},
                {"config", config_json(cfg)},
                {"oracle", fit_json(s.oracle_fit)},
                {"bem", s.bem_fit ? fit_json(*s.bem_fit) : json(nullptr)},
                {"bem_E0_growth", s.e0_growth},
                {"bem_E1_ratio", s.e1_ratio}};
    write_json(opt.out / "sweep_fit.json", fit);
    std::cout << "oracle compensated max/min = " << format_number(s.oracle_fit.compensated_ratio) << '\n';
    if (s.bem_fit) std::cout << "BEM compensated max/min = " << format_number(s.bem_fit->compensated_ratio) << '\n';
    return Ok;
  } catch (const Error& e) {
    return report_error(e);
  }
}

int cmd_validate(const Options& opt) {
  try {
    const TwoSphereConfig cfg = load_config(opt);
    ensure_dir(opt.out);
    const std::vector<Check> checks = validation_suite(cfg);
    json list = json::array();
    for (const Check& c : checks) {
      list.push_back(check_json(c));
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  measured " << format_number(c.measured)
                << (c.lower >= 0.0 ? "  range [" + format_number(c.lower) + ", " + format_number(c.threshold) + "]"
                                   : "  threshold " + format_number(c.threshold))
                << '\n';
    }
    const bool ok = all_pass(checks);
    write_json(opt.out / "validation.json", {{"schema_version", kSchemaVersion},
                                             {"config", config_json(cfg)},
                                             {"pass", ok},
                                             {"checks", list}});
    return ok ? Ok : ValidationFailed;
  } catch (const Error& e) {
    return report_error(e);
  }
}

}  // namespace twosphere::cli
