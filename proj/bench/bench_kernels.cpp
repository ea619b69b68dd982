// Serial vs OpenMP timings for the parallel kernels.

#include <benchmark/benchmark.h>

#include "sigstab/oracle.hpp"
#include "sigstab/stability.hpp"

namespace {

using sigstab::Exec;
using sigstab::Matrix;

Matrix bench_matrix(std::size_t n) {
  return sigstab::oracle::random_matrix(n, 7, {-5.0, -0.1}, {-5.0, 5.0}, 0.3);
}

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::parallel : Exec::serial; }

void BM_CoefficientPolynomials(benchmark::State& state) {
  const Matrix m = bench_matrix(static_cast<std::size_t>(state.range(0)));
  const Exec exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(sigstab::coefficient_polynomials(m, exec));
}

void BM_Sweep(benchmark::State& state) {
  const Matrix m = bench_matrix(static_cast<std::size_t>(state.range(0)));
  const auto scp = sigstab::coefficient_polynomials(m, Exec::serial);
  const Exec exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(sigstab::sweep(m, scp, 0.0, 10.0, 400, exec));
}

void BM_AnalyzeBatch(benchmark::State& state) {
  std::vector<Matrix> ms;
  for (std::uint64_t k = 0; k < 64; ++k)
    ms.push_back(sigstab::oracle::random_matrix(2 + k % 7, k, {-5.0, -0.1}, {-5.0, 5.0}, 0.3));
  const Exec exec = state.range(0) ? Exec::parallel : Exec::serial;
  for (auto _ : state) {
    if (exec == Exec::parallel) {
      benchmark::DoNotOptimize(sigstab::analyze_batch(ms));
    } else {
      sigstab::AnalyzeOptions opts;
      opts.exec = Exec::serial;
      for (const Matrix& m : ms) benchmark::DoNotOptimize(sigstab::analyze(m, opts));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(ms.size()));
}

}  // namespace

BENCHMARK(BM_CoefficientPolynomials)
    ->ArgNames({"n", "parallel"})
    ->ArgsProduct({{8, 16, 24}, {0, 1}})
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Sweep)->ArgNames({"n", "parallel"})->ArgsProduct({{4, 12}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalyzeBatch)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
