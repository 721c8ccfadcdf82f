#pragma once

// Data-parallel vector kernels used by grid functions and banded operators.
//
// Every kernel exists twice: `serial` is the straightforward reference loop,
// `parallel` is the OpenMP version used by the library. Tests compare the two
// and bench/ measures them against each other.
//
// The parallel dot product reduces over fixed-size chunks and sums the chunk
// partials in index order, so its result does not depend on the thread count.

#include <cstddef>
#include <span>
#include <vector>

namespace factorized::kernels {

/// Vectors shorter than this run the parallel kernels on one thread.
inline constexpr std::size_t kParallelThreshold = 8192;

/// Chunk length of the deterministic parallel reduction.
inline constexpr std::size_t kReductionChunk = 2048;

/// Lower diagonals of a symmetric band: diagonals[d][i] = A(i + d, i).
using BandDiagonals = std::span<const std::vector<double>>;

namespace serial {

double dot(std::span<const double> a, std::span<const double> b);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
/// out = alpha * x + beta * y
void axpby(double alpha, std::span<const double> x, double beta, std::span<const double> y,
           std::span<double> out);
/// out = A in, A symmetric with the given lower diagonals.
void band_apply(BandDiagonals diagonals, std::span<const double> in, std::span<double> out);

}  // namespace serial

namespace parallel {

double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void axpby(double alpha, std::span<const double> x, double beta, std::span<const double> y,
           std::span<double> out);
void band_apply(BandDiagonals diagonals, std::span<const double> in, std::span<double> out);

}  // namespace parallel

}  // namespace factorized::kernels
