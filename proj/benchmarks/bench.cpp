#include <benchmark/benchmark.h>

#include <esvs/metrics.hpp>
#include <esvs/optimize.hpp>
#include <esvs/oracle.hpp>

namespace {

void BM_WignerPoint(benchmark::State& state) {
  const esvs::EsvsParams ps{0.8, int(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(esvs::wigner(ps, {0.7, -0.4}));
}
BENCHMARK(BM_WignerPoint)->Arg(1)->Arg(3)->Arg(5);

void BM_WignerGrid(benchmark::State& state) {
  const esvs::EsvsParams ps{0.8, 2};
  const int steps = int(state.range(0));
  for (auto _ : state) {
    esvs::PhaseGrid g = esvs::wigner_grid(ps, {-4.0, 4.0}, {-2.0, 2.0}, steps);
    benchmark::DoNotOptimize(g.values.data());
  }
  state.SetItemsProcessed(state.iterations() * steps * steps);
}
BENCHMARK(BM_WignerGrid)->Arg(41)->Arg(81);

void BM_Pnd(benchmark::State& state) {
  const esvs::EsvsParams ps{0.8, int(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(esvs::pnd(ps, 12));
}
BENCHMARK(BM_Pnd)->Arg(0)->Arg(4);

void BM_MandelQ(benchmark::State& state) {
  const esvs::EsvsParams ps{0.8, 3};
  for (auto _ : state) benchmark::DoNotOptimize(esvs::mandel_q(ps));
}
BENCHMARK(BM_MandelQ);

void BM_NonGauss(benchmark::State& state) {
  const esvs::EsvsParams ps{0.5, int(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(esvs::non_gaussianity(ps).delta);
}
BENCHMARK(BM_NonGauss)->Arg(1)->Arg(3)->Arg(6);

void BM_Fidelity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(esvs::fidelity({1.3, 2}, {1.5, 2}));
}
BENCHMARK(BM_Fidelity);

void BM_OptimalFidelity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(esvs::optimal_fidelity(2, 2, 1.5).f_star);
}
BENCHMARK(BM_OptimalFidelity);

// never repeat an r value, so every call takes the cold compute path
void BM_OracleSqueezeColumn(benchmark::State& state) {
  static long counter = 0;
  const int dim = int(state.range(0));
  for (auto _ : state) {
    const double r = 0.5 + 1e-9 * double(++counter);
    benchmark::DoNotOptimize(esvs::oracle::squeeze_column(r, 0, dim).amps.data());
  }
}
BENCHMARK(BM_OracleSqueezeColumn)->Arg(128)->Arg(256);

void BM_OracleSqueezeColumnCached(benchmark::State& state) {
  const int dim = int(state.range(0));
  esvs::oracle::squeeze_column(0.8, 0, dim);
  for (auto _ : state)
    benchmark::DoNotOptimize(esvs::oracle::squeeze_column(0.8, 0, dim).amps.data());
}
BENCHMARK(BM_OracleSqueezeColumnCached)->Arg(256);

void BM_OracleWigner(benchmark::State& state) {
  const esvs::FockVector v = esvs::oracle::esvs_vector({0.8, 2}, 128);
  for (auto _ : state) benchmark::DoNotOptimize(esvs::oracle::wigner(v, 0.7, -0.4));
}
BENCHMARK(BM_OracleWigner);

}  // namespace

BENCHMARK_MAIN();
