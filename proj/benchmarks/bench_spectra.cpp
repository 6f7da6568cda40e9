#include <benchmark/benchmark.h>

#include "spectile/spectra.hpp"

using namespace spectile;

static void BM_CheckSpectrumCube(benchmark::State& state) {
  auto d = static_cast<std::size_t>(state.range(0));
  auto cube = BoxUnionDomain::cube(d, 0, 1);
  auto lam = PeriodicPointSet::scaled_integer_lattice(d);
  for (auto _ : state) benchmark::DoNotOptimize(check_spectrum(cube, lam));
}
BENCHMARK(BM_CheckSpectrumCube)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_CheckPackingPower(benchmark::State& state) {
  PowerSpectrum f(BoxUnionDomain::interval(0, 1));
  auto lam = PeriodicPointSet::scaled_integer_lattice(1, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(check_packing(f, lam, Level(1.0)));
}
BENCHMARK(BM_CheckPackingPower)->Unit(benchmark::kMillisecond);

static void BM_CheckOrthogonal(benchmark::State& state) {
  auto dom = BoxUnionDomain::intervals({Interval(Rational(0), Rational(1, 2)), Interval(Rational(1), Rational(3, 2))});
  auto lam = PeriodicPointSet::scaled_integer_lattice(1);
  for (auto _ : state) benchmark::DoNotOptimize(check_orthogonal(dom, lam));
}
BENCHMARK(BM_CheckOrthogonal);

BENCHMARK_MAIN();
