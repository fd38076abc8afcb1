#include <benchmark/benchmark.h>

#include "mfgas/chain.hpp"
#include "mfgas/equilibrium.hpp"
#include "mfgas/gas.hpp"
#include "mfgas/tridiag.hpp"

namespace {

using namespace mfgas;

GasParameters log_gas(int N, double gamma) {
  return GasParameters{InteractionKernel::log_kernel(1), Potential::power(2.0, 1), N, gamma,
                       -1.0};
}

void BM_DeltaEnergy(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const GasParameters gas = log_gas(N, 1.0);
  ChainState chain = init_chain(gas, 7, 1.0, 0);
  const Vec proposal = Vec::of(chain.config.at(0)[0] + 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(delta_energy(gas, chain.config, 0, proposal));
  }
  state.SetComplexityN(N);
}
BENCHMARK(BM_DeltaEnergy)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096)->Complexity();

void BM_Sweep(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const GasParameters gas = log_gas(N, 1.0);
  ChainState chain = init_chain(gas, 7, 1.0, 0);
  for (auto _ : state) {
    for (int i = 0; i < N; ++i) mh_step(gas, chain);
  }
  state.SetComplexityN(N);
}
BENCHMARK(BM_Sweep)->Arg(64)->Arg(256)->Arg(1024)->Complexity();

void BM_TridiagSpectrum(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  Rng rng = make_rng(11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_tridiagonal_gbe(N, 1.0 / N, rng));
  }
}
BENCHMARK(BM_TridiagSpectrum)->Arg(256)->Arg(1024)->Arg(4096);

void BM_TridiagMax(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  Rng rng = make_rng(11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_tridiagonal_gbe_max(N, 1.0 / N, rng));
  }
}
BENCHMARK(BM_TridiagMax)->Arg(1024)->Arg(16384)->Arg(100000);

void BM_EquilibriumSolve(benchmark::State& state) {
  const auto kernel = InteractionKernel::log_kernel(1);
  const auto pot = Potential::power(2.0, 1);
  SolveOptions opts;
  opts.cells = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_equilibrium(kernel, pot, 1.0, opts));
  }
}
BENCHMARK(BM_EquilibriumSolve)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
