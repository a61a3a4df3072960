#include <benchmark/benchmark.h>

#include "rkhs/metrics.hpp"
#include "rkhs/npkernels.hpp"
#include "rkhs/operators.hpp"

using namespace rkhs;

static void BM_DeltaDhb1(benchmark::State& state) {
  const Kernel k = Kernel::dhb(1.0);
  const Point x(Complex(0.31, -0.2)), y(Complex(-0.45, 0.17));
  for (auto _ : state) benchmark::DoNotOptimize(delta(k, x, y));
}
BENCHMARK(BM_DeltaDhb1);

static void BM_DeltaProductPower(benchmark::State& state) {
  const Kernel k =
      Kernel::product(Kernel::power(Kernel::dhb(1.0), 1.5), Kernel::dhb(0.0));
  const Point x(Complex(0.31, -0.2)), y(Complex(-0.45, 0.17));
  for (auto _ : state) benchmark::DoNotOptimize(delta(k, x, y));
}
BENCHMARK(BM_DeltaProductPower);

static void BM_GramEig(benchmark::State& state) {
  const Kernel k = Kernel::dhb(2.0);
  std::vector<Point> pts;
  for (int i = 0; i < state.range(0); ++i) {
    const double r = 0.2 + 0.6 * (i % 7) / 7.0;
    pts.emplace_back(std::polar(r, 1.7 * i));
  }
  for (auto _ : state) benchmark::DoNotOptimize(k.gram(pts).min_eigenvalue);
}
BENCHMARK(BM_GramEig)->Arg(4)->Arg(8)->Arg(16);

static void BM_SchattenGap(benchmark::State& state) {
  const Kernel k = Kernel::dhb(1.0);
  auto basis = SpanBasis::build(k, {Point(0.0), Point(0.6)});
  const SpanOperator gap = projection(basis, 0).sub(projection(basis, 1));
  for (auto _ : state) benchmark::DoNotOptimize(schatten_norm(gap, 1.0));
}
BENCHMARK(BM_SchattenGap);

static void BM_BlaschkePrefix(benchmark::State& state) {
  const Kernel k = Kernel::dhb(1.0);
  ZeroSetGenerator gen;
  gen.kind = ZeroSetGenerator::Kind::geometric;
  gen.prefix = static_cast<std::size_t>(state.range(0));
  const std::vector<Point> queries = {Point(0.3)};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        blaschke_product(k, gen, Point(0.0), gen.prefix, queries));
}
BENCHMARK(BM_BlaschkePrefix)->Arg(10)->Arg(40);

BENCHMARK_MAIN();
