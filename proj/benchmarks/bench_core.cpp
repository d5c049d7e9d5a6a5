#include <benchmark/benchmark.h>

#include "ghartree/evolution.hpp"
#include "ghartree/observables.hpp"
#include "ghartree/spectral.hpp"

using namespace ghartree;

namespace {

Field field_1d(int n) { return sample_gaussian(make_grid(1, 40.0, n), 1.0, 1.0); }

void BM_FourierMultiplier1D(benchmark::State& state) {
  const Field f = field_1d(static_cast<int>(state.range(0)));
  const auto table = make_symbol_table(f.grid, [](const std::array<double, 3>& xi) {
    return complexd(std::cos(xi[0]), std::sin(xi[0]));
  });
  for (auto _ : state) {
    Field out = apply_symbol_table(f, table);
    benchmark::DoNotOptimize(out.values.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FourierMultiplier1D)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_RieszPotential1D(benchmark::State& state) {
  const Field f = field_1d(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Field out = riesz_potential(f, 0.5);
    benchmark::DoNotOptimize(out.values.data());
  }
}
BENCHMARK(BM_RieszPotential1D)->Arg(1024)->Arg(4096);

void BM_StrangStep1D(benchmark::State& state) {
  const ModelParameters P(1, 1.8, 0.05, 1.0, 0.55, 6, 4);
  IntegratorConfig cfg;
  Field u = field_1d(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    u = strang_step(u, 0.0, 1e-3, P, cfg);
    benchmark::DoNotOptimize(u.values.data());
  }
}
BENCHMARK(BM_StrangStep1D)->Arg(1024)->Arg(4096);

void BM_StrangStep3D(benchmark::State& state) {
  const ModelParameters P(3, 1.9, 0.5, 1.0, 3.0, 13, 7);
  IntegratorConfig cfg;
  Field u = sample_gaussian(make_grid(3, 20.0, static_cast<int>(state.range(0))), 1.0, 1.0);
  for (auto _ : state) {
    u = strang_step(u, 0.0, 5e-4, P, cfg);
    benchmark::DoNotOptimize(u.values.data());
  }
}
BENCHMARK(BM_StrangStep3D)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ObservableRecord1D(benchmark::State& state) {
  const ModelParameters P(1, 1.8, 0.05, 1.0, 0.55, 6, 4);
  const Field f = field_1d(1024);
  for (auto _ : state) {
    auto rec = make_record(f, P);
    benchmark::DoNotOptimize(rec.x_norm);
  }
}
BENCHMARK(BM_ObservableRecord1D);

void BM_SteinDerivative(benchmark::State& state) {
  const Field f = field_1d(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Field out = stein_derivative(f, 0.5);
    benchmark::DoNotOptimize(out.values.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SteinDerivative)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

}  // namespace

BENCHMARK_MAIN();
