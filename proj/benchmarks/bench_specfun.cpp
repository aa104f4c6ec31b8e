#include <benchmark/benchmark.h>

#include <complex>

#include "conical_ab/specfun.hpp"

namespace sf = conical_ab::specfun;

static void BM_LnGammaComplex(benchmark::State& state) {
  const std::complex<double> z{1.0, 0.6667};
  for (auto _ : state) benchmark::DoNotOptimize(sf::ln_gamma(z));
}
BENCHMARK(BM_LnGammaComplex);

static void BM_BesselI(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(sf::bessel_i(0.433, x));
}
BENCHMARK(BM_BesselI)->Arg(1)->Arg(20)->Arg(300);

static void BM_BesselK(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(sf::bessel_k(0.433, x));
}
BENCHMARK(BM_BesselK)->Arg(1)->Arg(20)->Arg(300);

static void BM_BesselKImag(benchmark::State& state) {
  const double x = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sf::bessel_k_imag(0.6667, x));
}
BENCHMARK(BM_BesselKImag)->Arg(0)->Arg(2)->Arg(4);

static void BM_CoulombPhase(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sf::coulomb_phase(0.6667));
}
BENCHMARK(BM_CoulombPhase);
