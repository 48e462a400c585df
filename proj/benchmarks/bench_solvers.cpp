#include <benchmark/benchmark.h>

#include "qcontrol/hum.hpp"
#include "qcontrol/nonlinear_control.hpp"
#include "qcontrol/rng.hpp"
#include "qcontrol/spectral.hpp"

using namespace qcontrol;

namespace {

Field bump(const Grid& grid, double h1_norm) {
  Field f(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.coordinate(grid.unravel(i)[0]) - 4.0;
    f[i] = std::exp(-x * x);
  }
  f *= h1_norm / sobolev_norm(f, 1.0);
  return f;
}

HumProblem bench_problem(int n, int nt) {
  Grid grid(1, n, 8.0);
  CutoffPhi phi = build_cutoff(grid, 2.0);
  Field u0 = bump(grid, 0.01);
  return HumProblem(std::move(grid), std::move(phi), 2.0, nt, std::move(u0));
}

void BM_nls_step(benchmark::State& state) {
  const Grid grid(1, static_cast<int>(state.range(0)), 8.0);
  SeededRng rng = SeededRng(2).substream("bench-nls");
  Field u0 = random_band_limited_field(grid, grid.n() / 6, rng, false);
  u0 *= 0.5 / sobolev_norm(u0, 0.0);
  const TimeGrid times(0.0, 0.1, 16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nls_solve(u0, nullptr, times, Direction::forward));
  }
  state.SetItemsProcessed(state.iterations() * 16);
}
BENCHMARK(BM_nls_step)->Arg(64)->Arg(256);

void BM_gamma_apply(benchmark::State& state) {
  const HumProblem problem = bench_problem(static_cast<int>(state.range(0)), 256);
  SeededRng rng = SeededRng(3).substream("bench-gamma");
  const Field v0 = random_band_limited_field(problem.grid, 8, rng, false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gamma_apply(v0, problem));
  }
}
BENCHMARK(BM_gamma_apply)->Arg(64)->Arg(256);

void BM_hum_solve(benchmark::State& state) {
  const HumProblem problem = bench_problem(64, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hum_solve(problem, 1e-8, 400));
  }
}
BENCHMARK(BM_hum_solve)->Arg(128)->Arg(512);

void BM_observability_dense(benchmark::State& state) {
  Grid grid(1, static_cast<int>(state.range(0)), 8.0);
  const HumProblem problem(grid, build_cutoff(grid, 2.0), 2.0, 64, Field(grid));
  for (auto _ : state) {
    benchmark::DoNotOptimize(observability_constant(problem));
  }
}
BENCHMARK(BM_observability_dense)->Arg(16)->Arg(32);

void BM_fixed_point_step(benchmark::State& state) {
  HumProblem hum = bench_problem(64, 256);
  NonlinearControlProblem problem(std::move(hum), 0.05, 0.5);
  SeededRng rng = SeededRng(4).substream("bench-b");
  Field phi0 = random_band_limited_field(problem.hum.grid, 8, rng, false);
  phi0 *= 0.1 / sobolev_norm(phi0, -1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fixed_point_map(phi0, problem));
  }
}
BENCHMARK(BM_fixed_point_step);

}  // namespace
