#include <benchmark/benchmark.h>

#include "conical_ab/oracle.hpp"
#include "conical_ab/spectrum.hpp"

namespace orc = conical_ab::oracle;
namespace sp = conical_ab::spectrum;

static void BM_BuildHamiltonian(benchmark::State& state) {
  const auto ch = sp::make_channel(0, 0.0, 2.0);
  const orc::RadialGrid grid(1e-2, 500.0, static_cast<std::size_t>(state.range(0)),
                             orc::Spacing::LogUniform, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(orc::build_hamiltonian(ch, 1.0, 1.0, grid));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildHamiltonian)->Range(1 << 10, 1 << 16)->Complexity();

static void BM_LowestEigenvalue(benchmark::State& state) {
  const auto ch = sp::make_channel(0, 0.0, 2.0);
  const orc::RadialGrid grid(1e-2, 500.0, static_cast<std::size_t>(state.range(0)),
                             orc::Spacing::LogUniform, 1.0);
  const auto op = orc::build_hamiltonian(ch, 1.0, 1.0, grid);
  for (auto _ : state) benchmark::DoNotOptimize(orc::lowest_eigenvalue(op));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LowestEigenvalue)->Range(1 << 10, 1 << 16)->Complexity();

static void BM_AntiConeRoot(benchmark::State& state) {
  const auto ch = sp::make_channel(0, 0.0, 2.0);
  const auto form = static_cast<sp::MatchingForm>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sp::anticone_bound_energy(ch, 1.0, 1.0, sp::Mode::NumericRoot, form));
  }
}
BENCHMARK(BM_AntiConeRoot)->DenseRange(0, 2);

static void BM_ConeRoot(benchmark::State& state) {
  const auto ch = sp::make_channel(0, 0.0, 0.6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sp::cone_bound_energy(ch, 1.0, 1.0, 0, sp::Mode::NumericRoot));
  }
}
BENCHMARK(BM_ConeRoot);

BENCHMARK_MAIN();
