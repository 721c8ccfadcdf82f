#include "factorized/kernels.hpp"

#include <algorithm>
#include <cstdint>

namespace factorized::kernels {

namespace {

// Row i of a symmetric band product: sum over the stored lower diagonals and
// their mirrored upper counterparts.
inline double band_row(BandDiagonals diagonals, std::span<const double> in, std::size_t i) {
  const std::size_t n = in.size();
  double acc = diagonals[0][i] * in[i];
  for (std::size_t d = 1; d < diagonals.size(); ++d) {
    if (i >= d) acc += diagonals[d][i - d] * in[i - d];
    if (i + d < n) acc += diagonals[d][i] * in[i + d];
  }
  return acc;
}

}  // namespace

namespace serial {

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void axpby(double alpha, std::span<const double> x, double beta, std::span<const double> y,
           std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i] + beta * y[i];
}

void band_apply(BandDiagonals diagonals, std::span<const double> in, std::span<double> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = band_row(diagonals, in, i);
}

}  // namespace serial

namespace parallel {

double dot(std::span<const double> a, std::span<const double> b) {
  const auto n = static_cast<std::int64_t>(a.size());
  const std::int64_t chunks = (n + kReductionChunk - 1) / static_cast<std::int64_t>(kReductionChunk);
  std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);

#pragma omp parallel for schedule(static) if (a.size() >= kParallelThreshold)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::int64_t begin = c * static_cast<std::int64_t>(kReductionChunk);
    const std::int64_t end = std::min(n, begin + static_cast<std::int64_t>(kReductionChunk));
    double acc = 0.0;
    for (std::int64_t i = begin; i < end; ++i) acc += a[i] * b[i];
    partial[c] = acc;
  }

  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const auto n = static_cast<std::int64_t>(x.size());
#pragma omp parallel for schedule(static) if (x.size() >= kParallelThreshold)
  for (std::int64_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void axpby(double alpha, std::span<const double> x, double beta, std::span<const double> y,
           std::span<double> out) {
  const auto n = static_cast<std::int64_t>(x.size());
#pragma omp parallel for schedule(static) if (x.size() >= kParallelThreshold)
  for (std::int64_t i = 0; i < n; ++i) out[i] = alpha * x[i] + beta * y[i];
}

void band_apply(BandDiagonals diagonals, std::span<const double> in, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(in.size());
#pragma omp parallel for schedule(static) if (in.size() >= kParallelThreshold)
  for (std::int64_t i = 0; i < n; ++i) out[i] = band_row(diagonals, in, static_cast<std::size_t>(i));
}

}  // namespace parallel

}  // namespace factorized::kernels
