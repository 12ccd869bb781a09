#include <benchmark/benchmark.h>

#include "besselcert/inequalities.hpp"
#include "besselcert/kernel.hpp"
#include "besselcert/sharpness.hpp"
#include "besselcert/zeros.hpp"

namespace {

using namespace besselcert;

void OscillatorySeries(benchmark::State& state) {
  BesselSpec spec(-0.5, Kind::Oscillatory);
  const double x = 0.01 * state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_J(spec, x, 1e-13).value);
  }
}
BENCHMARK(OscillatorySeries)->Arg(50)->Arg(150)->Arg(300);

void ModifiedSeries(benchmark::State& state) {
  BesselSpec spec(-0.5, Kind::Modified);
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_I(spec, x, 1e-12).value);
  }
}
BENCHMARK(ModifiedSeries)->Arg(1)->Arg(10)->Arg(40);

void FirstZero(benchmark::State& state) {
  const double p = -0.9 + 0.01 * state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_first_zero(p, 1e-12).zero);
  }
}
BENCHMARK(FirstZero)->Arg(0)->Arg(40)->Arg(80);

void RatioFunctionG(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_G(-0.5, x).value);
  }
}
BENCHMARK(RatioFunctionG)->Arg(1)->Arg(20)->Arg(40);

void MarginPoint(benchmark::State& state) {
  const InequalityInstance& inst = find_instance("T2");
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        evaluate_instance(inst, -0.5, 20.0, 1e-12).margin);
  }
}
BENCHMARK(MarginPoint);

void SweepRow(benchmark::State& state) {
  const InequalityInstance& inst = find_instance("T2");
  GridSpec grid;
  grid.p_steps = 2;
  grid.x_steps = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep(inst, grid).min_margin);
  }
}
BENCHMARK(SweepRow)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
