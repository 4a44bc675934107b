// Parallel kernels against their serial twins.

#include <benchmark/benchmark.h>

#include "dynsamp/kernels.hpp"
#include "dynsamp/subsample.hpp"
#include "test_support.hpp"

using namespace dynsamp;

namespace {

Matrix columns(Index n, Index k) {
  dynsamp::testing::Rng rng(42);
  Matrix c(n, k);
  for (Index j = 0; j < k; ++j) c.col(j) = rng.vector(n);
  return c;
}

template <bool Parallel>
void BM_FrameOperator(benchmark::State& state) {
  const Index n = state.range(0);
  const Matrix c = columns(n, 8 * n);
  for (auto _ : state) {
    Matrix s = Parallel ? kernels::frame_operator(c) : kernels::serial::frame_operator(c);
    benchmark::DoNotOptimize(s.data());
  }
  state.counters["threads"] = kernels::max_threads();
}

template <bool Parallel>
void BM_Dft(benchmark::State& state) {
  const Index n = state.range(0);
  const Vector v = columns(n, 1).col(0);
  for (auto _ : state) {
    Vector out = Parallel ? kernels::dft(v, kernels::DftSign::Forward)
                          : kernels::serial::dft(v, kernels::DftSign::Forward);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_SigmaSweep(benchmark::State& state) {
  const Symbol symbol(GaussianSymbol{});
  SweepOptions opts;
  opts.grid_size = static_cast<int>(state.range(0));
  opts.parallel = Parallel;
  for (auto _ : state) {
    VandermondeSweep s = sigma_sweep(symbol, 3, 3, opts);
    benchmark::DoNotOptimize(s.sigmas.data());
  }
}

}  // namespace

BENCHMARK(BM_FrameOperator<true>)->Name("frame_operator/parallel")->Arg(32)->Arg(128)->Arg(256);
BENCHMARK(BM_FrameOperator<false>)->Name("frame_operator/serial")->Arg(32)->Arg(128)->Arg(256);
BENCHMARK(BM_Dft<true>)->Name("dft/parallel")->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_Dft<false>)->Name("dft/serial")->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_SigmaSweep<true>)->Name("sigma_sweep/parallel")->Arg(512)->Arg(4096);
BENCHMARK(BM_SigmaSweep<false>)->Name("sigma_sweep/serial")->Arg(512)->Arg(4096);

BENCHMARK_MAIN();
