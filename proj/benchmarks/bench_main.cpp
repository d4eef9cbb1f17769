#include <benchmark/benchmark.h>

#include "twosphere/geometry.hpp"
#include "twosphere/lowfreq.hpp"
#include "twosphere/operators.hpp"
#include "twosphere/oracle.hpp"

using namespace twosphere;

namespace {

TwoSphereConfig config_for(int n_theta) {
  TwoSphereConfig cfg;
  cfg.epsilon = 0.2;
  cfg.mesh.n_theta = n_theta;
  cfg.mesh.n_phi = 2 * n_theta;
  cfg.mesh.grading_exponent = 3.0;
  return cfg;
}

void BM_BuildMesh(benchmark::State& state) {
  const TwoSphereConfig cfg = config_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_mesh(cfg));
}
BENCHMARK(BM_BuildMesh)->Arg(12)->Arg(26)->Unit(benchmark::kMillisecond);

void BM_AssembleAdjointNp(benchmark::State& state) {
  const TwoSphereConfig cfg = config_for(static_cast<int>(state.range(0)));
  const BoundaryModel model(build_mesh(cfg), cfg.mesh.near_quad_order);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_adjoint_np(model));
  state.counters["panels"] = static_cast<double>(model.panels());
}
BENCHMARK(BM_AssembleAdjointNp)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_AssembleMagnetic(benchmark::State& state) {
  const TwoSphereConfig cfg = config_for(static_cast<int>(state.range(0)));
  const BoundaryModel model(build_mesh(cfg), cfg.mesh.near_quad_order);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_magnetic(model, KernelOrder::static0()));
  state.counters["edges"] = static_cast<double>(model.edges());
}
BENCHMARK(BM_AssembleMagnetic)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_SolveOrderZero(benchmark::State& state) {
  const TwoSphereConfig cfg = config_for(static_cast<int>(state.range(0)));
  const BoundaryModel model(build_mesh(cfg), cfg.mesh.near_quad_order);
  for (auto _ : state) {
    LowFrequencySolver solver(cfg, model);
    benchmark::DoNotOptimize(solver.solve(false));
  }
}
BENCHMARK(BM_SolveOrderZero)->Arg(8)->Unit(benchmark::kSecond)->Iterations(1);

void BM_Bispherical(benchmark::State& state) {
  const double eps = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_bispherical(1.0, eps, Vec3(1.0, 0.0, 1.0)));
}
BENCHMARK(BM_Bispherical)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
