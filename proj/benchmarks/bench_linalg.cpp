#include <benchmark/benchmark.h>

#include "streamla/streamla.hpp"

using namespace streamla;

namespace {

mat random_square(benchmark::State& state) {
  RngState rng(42);
  const auto n = static_cast<uword>(state.range(0));
  return mat(n, n, FillTag::randn, rng);
}

void BM_MatmulNative(benchmark::State& state) {
  mat A = random_square(state), B = A.t();
  for (auto _ : state) benchmark::DoNotOptimize(matmul(A, B, native_backend()));
  state.SetComplexityN(state.range(0));
}

void BM_MatmulSystem(benchmark::State& state) {
  if (!system_backend().has(Routine::gemm)) {
    state.SkipWithError("system gemm unavailable");
    return;
  }
  mat A = random_square(state), B = A.t();
  for (auto _ : state) benchmark::DoNotOptimize(matmul(A, B, system_backend()));
  state.SetComplexityN(state.range(0));
}

void BM_Svd(benchmark::State& state, const Backend& be) {
  mat A = random_square(state);
  for (auto _ : state) benchmark::DoNotOptimize(svd(A, be));
}

void BM_EigSym(benchmark::State& state, const Backend& be) {
  mat A = random_square(state);
  A = A + A.t();
  for (auto _ : state) benchmark::DoNotOptimize(eig_sym(A, be));
}

void BM_Solve(benchmark::State& state) {
  mat A = random_square(state);
  mat B(A.n_rows(), 4, FillTag::ones);
  for (auto _ : state) benchmark::DoNotOptimize(solve(A, B));
}

}  // namespace

BENCHMARK(BM_MatmulNative)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNCubed);
BENCHMARK(BM_MatmulSystem)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNCubed);
BENCHMARK_CAPTURE(BM_Svd, native, native_backend())->RangeMultiplier(2)->Range(8, 128);
BENCHMARK_CAPTURE(BM_Svd, system, system_backend())->RangeMultiplier(2)->Range(8, 128);
BENCHMARK_CAPTURE(BM_EigSym, native, native_backend())->RangeMultiplier(2)->Range(8, 128);
BENCHMARK_CAPTURE(BM_EigSym, system, system_backend())->RangeMultiplier(2)->Range(8, 128);
BENCHMARK(BM_Solve)->RangeMultiplier(2)->Range(8, 256);
