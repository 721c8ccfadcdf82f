#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace factorized {

/// Symmetric banded matrix stored by its lower diagonals:
/// diagonal(d)[i] = A(i + d, i), 0 <= d <= bandwidth, 0 <= i < n - d.
class SymmetricBand {
 public:
  SymmetricBand(std::size_t n, std::size_t bandwidth);

  static SymmetricBand identity(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t bandwidth() const { return diagonals_.size() - 1; }

  std::span<const double> diagonal(std::size_t d) const { return diagonals_[d]; }
  std::span<double> diagonal(std::size_t d) { return diagonals_[d]; }
  std::span<const std::vector<double>> diagonals() const { return diagonals_; }

  /// Entry (i, j); zero outside the band.
  double at(std::size_t i, std::size_t j) const;

  void apply(std::span<const double> in, std::span<double> out) const;

  /// alpha * this + beta * other, with the wider of the two bandwidths.
  SymmetricBand combine(double alpha, const SymmetricBand& other, double beta) const;

  /// this * other. Only meaningful when the two commute (e.g. polynomials of
  /// one matrix), so the product is symmetric again.
  SymmetricBand multiply(const SymmetricBand& other) const;

  /// c_0 E + c_1 A + ... + c_d A^d by Horner's rule; bandwidth d * bandwidth().
  SymmetricBand polynomial(std::span<const double> coefficients) const;

 private:
  std::size_t n_;
  std::vector<std::vector<double>> diagonals_;
};

/// Banded Cholesky factor L L^T of a symmetric positive-definite band.
/// Throws NumericalError on a non-positive pivot.
class BandCholesky {
 public:
  explicit BandCholesky(const SymmetricBand& matrix);

  std::size_t size() const { return factor_.size(); }

  void solve_in_place(std::span<double> rhs) const;

 private:
  SymmetricBand factor_;
};

}  // namespace factorized
