#include "factorized/band.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "factorized/errors.hpp"
#include "factorized/kernels.hpp"

namespace factorized {

SymmetricBand::SymmetricBand(std::size_t n, std::size_t bandwidth) : n_(n) {
  if (n == 0) throw DimensionError("SymmetricBand: empty matrix");
  bandwidth = std::min(bandwidth, n - 1);
  diagonals_.reserve(bandwidth + 1);
  for (std::size_t d = 0; d <= bandwidth; ++d) diagonals_.emplace_back(n - d, 0.0);
}

SymmetricBand SymmetricBand::identity(std::size_t n) {
  SymmetricBand band(n, 0);
  std::fill(band.diagonals_[0].begin(), band.diagonals_[0].end(), 1.0);
  return band;
}

double SymmetricBand::at(std::size_t i, std::size_t j) const {
  const std::size_t lo = std::min(i, j);
  const std::size_t d = std::max(i, j) - lo;
  return d < diagonals_.size() ? diagonals_[d][lo] : 0.0;
}

void SymmetricBand::apply(std::span<const double> in, std::span<double> out) const {
  if (in.size() != n_ || out.size() != n_) {
    throw DimensionError("SymmetricBand::apply: expected length " + std::to_string(n_));
  }
  kernels::parallel::band_apply(diagonals_, in, out);
}

SymmetricBand SymmetricBand::combine(double alpha, const SymmetricBand& other, double beta) const {
  if (other.n_ != n_) throw DimensionError("SymmetricBand::combine: size mismatch");
  SymmetricBand out(n_, std::max(bandwidth(), other.bandwidth()));
  for (std::size_t d = 0; d <= out.bandwidth(); ++d) {
    auto& dst = out.diagonals_[d];
    if (d < diagonals_.size()) {
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += alpha * diagonals_[d][i];
    }
    if (d < other.diagonals_.size()) {
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += beta * other.diagonals_[d][i];
    }
  }
  return out;
}

SymmetricBand SymmetricBand::multiply(const SymmetricBand& other) const {
  if (other.n_ != n_) throw DimensionError("SymmetricBand::multiply: size mismatch");
  const std::size_t b1 = bandwidth();
  const std::size_t b2 = other.bandwidth();
  SymmetricBand out(n_, b1 + b2);
  const std::size_t bw = out.bandwidth();
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t d = 0; d <= bw && j + d < n_; ++d) {
      const std::size_t i = j + d;
      // (this * other)(i, j) = sum_k this(i, k) other(k, j); nonzero only for
      // |i - k| <= b1 and |k - j| <= b2.
      const std::size_t k_lo = std::max(i >= b1 ? i - b1 : 0, j >= b2 ? j - b2 : 0);
      const std::size_t k_hi = std::min({n_ - 1, i + b1, j + b2});
      double acc = 0.0;
      for (std::size_t k = k_lo; k <= k_hi; ++k) acc += at(i, k) * other.at(k, j);
      out.diagonals_[d][j] = acc;
    }
  }
  return out;
}

SymmetricBand SymmetricBand::polynomial(std::span<const double> coefficients) const {
  if (coefficients.empty()) return SymmetricBand(n_, 0);
  const SymmetricBand unit = identity(n_);
  SymmetricBand result = SymmetricBand(n_, 0).combine(0.0, unit, coefficients.back());
  for (std::size_t k = coefficients.size() - 1; k-- > 0;) {
    result = result.multiply(*this).combine(1.0, unit, coefficients[k]);
  }
  return result;
}

BandCholesky::BandCholesky(const SymmetricBand& matrix) : factor_(matrix) {
  const std::size_t n = factor_.size();
  const std::size_t bw = factor_.bandwidth();
  // In-place: factor_.diagonal(d)[j] becomes L(j + d, j).
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k_lo = j >= bw ? j - bw : 0;
    double pivot = factor_.diagonal(0)[j];
    for (std::size_t k = k_lo; k < j; ++k) {
      const double l = factor_.diagonal(j - k)[k];
      pivot -= l * l;
    }
    if (!(pivot > 0.0) || !std::isfinite(pivot)) {
      throw NumericalError("BandCholesky: non-positive pivot " + std::to_string(pivot) + " at row " +
                           std::to_string(j) + "; matrix is not positive definite");
    }
    const double ljj = std::sqrt(pivot);
    factor_.diagonal(0)[j] = ljj;
    for (std::size_t i = j + 1; i < n && i - j <= bw; ++i) {
      double acc = factor_.diagonal(i - j)[j];
      const std::size_t k_start = std::max(k_lo, i >= bw ? i - bw : 0);
      for (std::size_t k = k_start; k < j; ++k) {
        acc -= factor_.diagonal(i - k)[k] * factor_.diagonal(j - k)[k];
      }
      factor_.diagonal(i - j)[j] = acc / ljj;
    }
  }
}

void BandCholesky::solve_in_place(std::span<double> rhs) const {
  const std::size_t n = factor_.size();
  const std::size_t bw = factor_.bandwidth();
  if (rhs.size() != n) throw DimensionError("BandCholesky::solve: size mismatch");
  // L z = b
  for (std::size_t i = 0; i < n; ++i) {
    double acc = rhs[i];
    for (std::size_t k = i >= bw ? i - bw : 0; k < i; ++k) acc -= factor_.diagonal(i - k)[k] * rhs[k];
    rhs[i] = acc / factor_.diagonal(0)[i];
  }
  // L^T x = z
  for (std::size_t i = n; i-- > 0;) {
    double acc = rhs[i];
    for (std::size_t k = i + 1; k < n && k - i <= bw; ++k) acc -= factor_.diagonal(k - i)[i] * rhs[k];
    rhs[i] = acc / factor_.diagonal(0)[i];
  }
}

}  // namespace factorized
