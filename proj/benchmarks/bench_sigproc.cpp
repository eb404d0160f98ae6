#include <benchmark/benchmark.h>

#include "streamla/streamla.hpp"

using namespace streamla;

namespace {

// power-of-two lengths take the radix-2 path, the rest go through Bluestein
void BM_Fft(benchmark::State& state) {
  RngState rng(1);
  cx_mat x(static_cast<uword>(state.range(0)), 1, FillTag::randn, rng);
  for (auto _ : state) benchmark::DoNotOptimize(fft(x));
  state.SetComplexityN(state.range(0));
}

void BM_Conv(benchmark::State& state) {
  RngState rng(2);
  mat a(static_cast<uword>(state.range(0)), 1, FillTag::randn, rng);
  mat b(64, 1, FillTag::randn, rng);
  for (auto _ : state) benchmark::DoNotOptimize(conv(a, b));
}

void BM_Interp1(benchmark::State& state) {
  const auto n = static_cast<uword>(state.range(0));
  mat X = linspace(0.0, 1.0, n), Y = square(X);
  mat XI = linspace(0.0, 1.0, 4 * n);
  for (auto _ : state) benchmark::DoNotOptimize(interp1(X, Y, XI));
}

}  // namespace

BENCHMARK(BM_Fft)->Arg(256)->Arg(1000)->Arg(1024)->Arg(4093)->Arg(4096)->Complexity(benchmark::oNLogN);
BENCHMARK(BM_Conv)->RangeMultiplier(4)->Range(64, 16384);
BENCHMARK(BM_Interp1)->RangeMultiplier(8)->Range(64, 32768);

BENCHMARK_MAIN();
