// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "idstat/observables.hpp"
#include "idstat/statmech.hpp"

using namespace idstat;

namespace {

Spectrum box_spectrum(int cutoff) { return build_spectrum(DimensionlessSource{}, cutoff); }

std::vector<SweepPoint> sweep_grid() {
  std::vector<SweepPoint> grid;
  for (int n = 1; n <= 4; ++n) {
    for (double beta : {0.05, 0.2, 1.0}) grid.push_back({n, beta});
  }
  return grid;
}

void BM_lnZ_parallel(benchmark::State& state) {
  const auto spec = box_spectrum(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ln_canonical_Z(spec, 4, 0.1, Statistics::BoseEinstein));
}

void BM_lnZ_serial(benchmark::State& state) {
  const auto spec = box_spectrum(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::ln_canonical_Z(spec, 4, 0.1, Statistics::BoseEinstein));
}

void BM_sweep_parallel(benchmark::State& state) {
  const auto spec = box_spectrum(16);
  const auto grid = sweep_grid();
  for (auto _ : state) benchmark::DoNotOptimize(sweep_ln_canonical_Z(spec, Statistics::FermiDirac, grid));
}

void BM_sweep_serial(benchmark::State& state) {
  const auto spec = box_spectrum(16);
  const auto grid = sweep_grid();
  for (auto _ : state) benchmark::DoNotOptimize(serial::sweep_ln_canonical_Z(spec, Statistics::FermiDirac, grid));
}

StateVector five_particle_state() {
  return symmetrize(ProductState{{0, 1, 2, 3, 4}}, Parity::Antisymmetric).vector;
}

void BM_expectation_parallel(benchmark::State& state) {
  const auto v = five_particle_state();
  const auto x = box_position_operator(1.0, 5);
  for (auto _ : state) benchmark::DoNotOptimize(one_body_expectation(v, x, 2));
}

void BM_expectation_serial(benchmark::State& state) {
  const auto v = five_particle_state();
  const auto x = box_position_operator(1.0, 5);
  for (auto _ : state) benchmark::DoNotOptimize(serial::one_body_expectation(v, x, 2));
}

}  // namespace

BENCHMARK(BM_lnZ_parallel)->Arg(12)->Arg(20);
BENCHMARK(BM_lnZ_serial)->Arg(12)->Arg(20);
BENCHMARK(BM_sweep_parallel);
BENCHMARK(BM_sweep_serial);
BENCHMARK(BM_expectation_parallel);
BENCHMARK(BM_expectation_serial);

BENCHMARK_MAIN();
