#include <iostream>

#include <CLI11.hpp>

#include "twosphere/error.hpp"
#include "twosphere/parallel.hpp"
#include "twosphere_cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace twosphere::cli;
  CLI::App app{"Two-sphere low-frequency field solver"};
  app.require_subcommand(1);

  Options opt;
  std::string grid;
  auto common = [&opt](CLI::App* sub) {
    sub->add_option("--config", opt.config, "key = value configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "output directory")->capture_default_str();
    sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  };

  CLI::App* solve = app.add_subcommand("solve", "solve one configuration and probe the fields");
  common(solve);
  solve->add_option("--probes", opt.probes, "probe points, one x,y,z per line")->check(CLI::ExistingFile);
  solve->add_flag("--dump-operators", opt.dump_operators, "write W, Q and K* as binary matrices");

  CLI::App* sweep = app.add_subcommand("sweep", "gap sweep with rate fit");
  common(sweep);
  sweep->add_option("--eps-grid", grid, "comma separated gap widths");

  CLI::App* validate = app.add_subcommand("validate", "run the named validation checks");
  common(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? Ok : ConfigError;
  }

  try {
    if (!grid.empty()) opt.eps_grid = parse_eps_grid(grid);
  } catch (const twosphere::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ConfigError;
  }
  twosphere::set_thread_count(opt.threads);

  if (solve->parsed()) return cmd_solve(opt);
  if (sweep->parsed()) return cmd_sweep(opt);
  return cmd_validate(opt);
}
