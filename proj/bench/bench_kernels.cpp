#include <benchmark/benchmark.h>

#include <random>

#include "logdef/fourier.hpp"

using namespace logdef;

static FourierScalar random_table(int N, int M, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1, 1);
  FourierScalar f(BandLimit{N, M, 4 * std::max(N, M)});
  for (size_t i = 0; i < f.size(); ++i) f.data()[i] = cd(U(rng), U(rng));
  return hermitize(f);
}

static void BM_Convolve(benchmark::State& st, Exec e) {
  const int N = int(st.range(0));
  auto a = random_table(N, N, 1), b = random_table(N, N, 2);
  FourierScalar out(BandLimit{2 * N, 2 * N, 4 * N});
  for (auto _ : st) {
    std::fill(out.data(), out.data() + out.size(), cd(0, 0));
    kernels::convolve(e, a.data(), N, N, b.data(), N, N, out.data());
    benchmark::DoNotOptimize(out.data());
  }
}

static void BM_GridEval(benchmark::State& st, Exec e) {
  const int N = int(st.range(0));
  auto a = random_table(N, N, 3);
  for (auto _ : st) benchmark::DoNotOptimize(grid_eval(a, 4 * N + 1, 4 * N + 1, e));
}

static void BM_GridFit(benchmark::State& st, Exec e) {
  const int N = int(st.range(0));
  auto g = grid_eval(random_table(N, N, 4), 4 * N + 1, 4 * N + 1, Exec::Serial);
  for (auto _ : st) benchmark::DoNotOptimize(grid_fit(g, BandLimit{N, N, 4 * N}, e));
}

BENCHMARK_CAPTURE(BM_Convolve, serial, Exec::Serial)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK_CAPTURE(BM_Convolve, parallel, Exec::Parallel)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK_CAPTURE(BM_GridEval, serial, Exec::Serial)->Arg(16)->Arg(32);
BENCHMARK_CAPTURE(BM_GridEval, parallel, Exec::Parallel)->Arg(16)->Arg(32);
BENCHMARK_CAPTURE(BM_GridFit, serial, Exec::Serial)->Arg(16)->Arg(32);
BENCHMARK_CAPTURE(BM_GridFit, parallel, Exec::Parallel)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
