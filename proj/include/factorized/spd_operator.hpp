#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "factorized/band.hpp"
#include "factorized/grid_function.hpp"

namespace factorized {

/// delta <= lambda_min and lambda_max <= Lambda.
struct SpectralBounds {
  double lower = 0.0;
  double upper = 0.0;
};

inline constexpr double kShiftedSolveRtol = 1e-12;
inline constexpr double kPolynomialSolveRtol = 1e-10;

/// Self-adjoint positive-definite linear operator A.
///
/// Subclasses provide the action of A. Operators that expose a band get
/// direct banded Cholesky solves; all others fall back to conjugate
/// gradients. Instances are immutable once built, and every solve allocates
/// its own workspace, so one operator may be shared between threads.
class SpdOperator {
 public:
  virtual ~SpdOperator() = default;

  virtual std::size_t dimension() const = 0;
  virtual void apply(std::span<const double> in, std::span<double> out) const = 0;

  virtual const SymmetricBand* band() const { return nullptr; }
  virtual std::optional<SpectralBounds> spectral_bounds() const { return std::nullopt; }

  /// x with (E + c A) x = rhs, relative residual <= rtol. Requires c >= 0.
  virtual GridFunction solve_shifted(double c, const GridFunction& rhs,
                                     double rtol = kShiftedSolveRtol) const;

  /// x with (c_0 E + c_1 A + ... + c_d A^d) x = rhs, relative residual <= rtol.
  /// Throws NumericalError when the polynomial of A is not positive definite.
  virtual GridFunction solve_polynomial(std::span<const double> coefficients, const GridFunction& rhs,
                                        double rtol = kPolynomialSolveRtol) const;

  /// c_0 v + c_1 A v + ... + c_d A^d v.
  void apply_polynomial(std::span<const double> coefficients, std::span<const double> in,
                        std::span<double> out) const;
};

/// Operator stored as a symmetric band.
class BandedOperator final : public SpdOperator {
 public:
  explicit BandedOperator(SymmetricBand band, std::optional<SpectralBounds> bounds = std::nullopt);

  std::size_t dimension() const override { return band_.size(); }
  void apply(std::span<const double> in, std::span<double> out) const override;
  const SymmetricBand* band() const override { return &band_; }
  std::optional<SpectralBounds> spectral_bounds() const override { return bounds_; }

 private:
  SymmetricBand band_;
  std::optional<SpectralBounds> bounds_;
};

/// Operator known only through its action; solves use conjugate gradients.
class MatrixFreeOperator final : public SpdOperator {
 public:
  using Action = std::function<void(std::span<const double>, std::span<double>)>;

  MatrixFreeOperator(std::size_t dimension, Action action,
                     std::optional<SpectralBounds> bounds = std::nullopt);

  std::size_t dimension() const override { return dimension_; }
  void apply(std::span<const double> in, std::span<double> out) const override;
  std::optional<SpectralBounds> spectral_bounds() const override { return bounds_; }

 private:
  std::size_t dimension_;
  Action action_;
  std::optional<SpectralBounds> bounds_;
};

/// c_0 E + c_1 A + ... + c_d A^d for a fixed base operator A.
class OperatorPolynomial {
 public:
  OperatorPolynomial(const SpdOperator& base, std::vector<double> coefficients);

  const SpdOperator& base() const { return *base_; }
  std::span<const double> coefficients() const { return coefficients_; }
  std::size_t degree() const { return coefficients_.empty() ? 0 : coefficients_.size() - 1; }

  /// sum_j c_j lambda^j: the factor applied to an eigenvector with eigenvalue lambda.
  double symbol(double lambda) const;

  GridFunction apply(const GridFunction& v) const;

 private:
  const SpdOperator* base_;
  std::vector<double> coefficients_;
};

GridFunction apply(const SpdOperator& op, const GridFunction& v);
GridFunction solve_shifted(const SpdOperator& op, double c, const GridFunction& rhs);
GridFunction solve_polynomial(const OperatorPolynomial& poly, const GridFunction& rhs);

/// Unpreconditioned conjugate gradients for a symmetric positive-definite
/// action. Throws NumericalError on breakdown (p^T M p <= 0) or when the
/// relative residual does not reach rtol within max_iterations.
std::vector<double> conjugate_gradient(
    const std::function<void(std::span<const double>, std::span<double>)>& action,
    std::span<const double> rhs, double rtol, std::size_t max_iterations);

}  // namespace factorized
