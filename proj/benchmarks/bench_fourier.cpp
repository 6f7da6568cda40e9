#include <benchmark/benchmark.h>

#include "spectile/fourier.hpp"

using namespace spectile;

static void BM_EvalFtInterval(benchmark::State& state) {
  auto dom = BoxUnionDomain::interval(0, 1);
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_ft(dom, x));
    x += 1e-7;
  }
}
BENCHMARK(BM_EvalFtInterval);

static void BM_EvalFtBoxUnion(benchmark::State& state) {
  std::vector<Box> boxes;
  for (long i = 0; i < state.range(0); ++i) {
    boxes.push_back({Interval(Rational(2 * i), Rational(2 * i + 1)), Interval(Rational(0), Rational(1, 2))});
  }
  BoxUnionDomain dom(2, boxes);
  std::vector<double> x{0.37, -1.2};
  for (auto _ : state) benchmark::DoNotOptimize(eval_ft(dom, x));
}
BENCHMARK(BM_EvalFtBoxUnion)->Arg(1)->Arg(8)->Arg(64);

static void BM_ZeroSetTwoIntervals(benchmark::State& state) {
  auto dom = BoxUnionDomain::intervals({Interval(Rational(0), Rational(1, 2)), Interval(Rational(1), Rational(3, 2))});
  for (auto _ : state) benchmark::DoNotOptimize(zero_set_1d(dom, static_cast<double>(state.range(0))));
}
BENCHMARK(BM_ZeroSetTwoIntervals)->Arg(10)->Arg(1000);

static void BM_NumericZeroScan(benchmark::State& state) {
  auto dom = BoxUnionDomain::intervals({Interval(Rational(0), Rational(1, 4)), Interval(Rational(1, 2), Rational(5, 4))});
  for (auto _ : state) benchmark::DoNotOptimize(numeric_zero_scan(dom, -10, 10));
}
BENCHMARK(BM_NumericZeroScan);

BENCHMARK_MAIN();
