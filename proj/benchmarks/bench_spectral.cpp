#include <benchmark/benchmark.h>

#include "qcontrol/propagators.hpp"
#include "qcontrol/rng.hpp"
#include "qcontrol/spectral.hpp"

using namespace qcontrol;

namespace {

Field sample_field(const Grid& grid) {
  SeededRng rng = SeededRng(1).substream("bench");
  return random_band_limited_field(grid, std::max(1, grid.n() / 6), rng, false);
}

void BM_multiplier_1d(benchmark::State& state) {
  const Grid grid(1, static_cast<int>(state.range(0)), 8.0);
  const Field f = sample_field(grid);
  const std::vector<cplx> table =
      symbol_table(grid, [](const std::array<double, 3>& k) {
        return std::polar(1.0, -0.01 * (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]));
      });
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_symbol_table(f, table));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}
BENCHMARK(BM_multiplier_1d)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096);

void BM_multiplier_3d(benchmark::State& state) {
  const Grid grid(3, static_cast<int>(state.range(0)), 8.0);
  const Field f = sample_field(grid);
  const std::vector<cplx> table =
      symbol_table(grid, [](const std::array<double, 3>& k) {
        return std::polar(1.0, -0.01 * (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]));
      });
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_symbol_table(f, table));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}
BENCHMARK(BM_multiplier_3d)->Arg(16)->Arg(32);

void BM_sobolev_norm(benchmark::State& state) {
  const Grid grid(1, static_cast<int>(state.range(0)), 8.0);
  const Field f = sample_field(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sobolev_norm(f, -1.0));
  }
}
BENCHMARK(BM_sobolev_norm)->Arg(64)->Arg(1024);

void BM_free_flow_step(benchmark::State& state) {
  const Grid grid(1, static_cast<int>(state.range(0)), 8.0);
  const Field f = sample_field(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(free_flow(f, 0.01));
  }
}
BENCHMARK(BM_free_flow_step)->Arg(64)->Arg(1024);

}  // namespace
