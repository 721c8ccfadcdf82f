// Serial reference kernels against their OpenMP counterparts, plus a full
// time step of each scheme on a large model grid.
//
// OMP_NUM_THREADS controls the thread count of the parallel variants.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "factorized/band.hpp"
#include "factorized/heat_model.hpp"
#include "factorized/kernels.hpp"
#include "factorized/schemes.hpp"

using namespace factorized;

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

template <bool Parallel>
void BM_Dot(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_vector(n, 1), b = random_vector(n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::parallel::dot(a, b) : kernels::serial::dot(a, b));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * 2 * n * sizeof(double)));
}

template <bool Parallel>
void BM_Axpy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_vector(n, 3);
  auto y = random_vector(n, 4);
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::axpy(1e-9, x, y);
    } else {
      kernels::serial::axpy(1e-9, x, y);
    }
    benchmark::ClobberMemory();
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * 3 * n * sizeof(double)));
}

template <bool Parallel>
void BM_BandApply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  SymmetricBand band(n, 2);
  for (std::size_t d = 0; d <= band.bandwidth(); ++d) {
    const auto r = random_vector(band.diagonal(d).size(), 5 + static_cast<unsigned>(d));
    std::copy(r.begin(), r.end(), band.diagonal(d).begin());
  }
  const auto x = random_vector(n, 9);
  std::vector<double> out(n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::band_apply(band.diagonals(), x, out);
    } else {
      kernels::serial::band_apply(band.diagonals(), x, out);
    }
    benchmark::ClobberMemory();
  }
}

void BM_Step(benchmark::State& state) {
  const auto kind = static_cast<SchemeKind>(state.range(0));
  const int M = static_cast<int>(state.range(1));
  const BandedOperator A = build_operator(M);
  // tau lambda_max stays near 40 so the solves meet their residual tolerance.
  const double tau = 10.0 / (static_cast<double>(M) * M), sigma = 0.75;
  const auto n = static_cast<std::size_t>(M - 1);
  const GridFunction y(random_vector(n, 11), 1.0 / M);
  const GridFunction y_prev(random_vector(n, 12), 1.0 / M);
  const GridFunction phi(random_vector(n, 13), 1.0 / M);
  for (auto _ : state) {
    switch (kind) {
      case SchemeKind::backward_euler: benchmark::DoNotOptimize(step_backward_euler(A, y, tau, phi)); break;
      case SchemeKind::crank_nicolson: benchmark::DoNotOptimize(step_crank_nicolson(A, y, tau, phi)); break;
      case SchemeKind::sm2_direct: benchmark::DoNotOptimize(step_sm2_direct(A, y, tau, phi)); break;
      case SchemeKind::three_level_factorized:
        benchmark::DoNotOptimize(step_three_level(A, y, y_prev, tau, sigma, phi));
        break;
      case SchemeKind::predictor_corrector_factorized:
        benchmark::DoNotOptimize(step_predictor_corrector(A, y, tau, sigma, phi, phi));
        break;
    }
  }
  state.SetLabel(std::string(short_name(kind)));
}

}  // namespace

BENCHMARK(BM_Dot<false>)->RangeMultiplier(16)->Range(1 << 12, 1 << 22);
BENCHMARK(BM_Dot<true>)->RangeMultiplier(16)->Range(1 << 12, 1 << 22);
BENCHMARK(BM_Axpy<false>)->RangeMultiplier(16)->Range(1 << 12, 1 << 22);
BENCHMARK(BM_Axpy<true>)->RangeMultiplier(16)->Range(1 << 12, 1 << 22);
BENCHMARK(BM_BandApply<false>)->RangeMultiplier(16)->Range(1 << 12, 1 << 22);
BENCHMARK(BM_BandApply<true>)->RangeMultiplier(16)->Range(1 << 12, 1 << 22);
BENCHMARK(BM_Step)->ArgsProduct({{0, 1, 2, 3, 4}, {1 << 10, 1 << 16}});

BENCHMARK_MAIN();
