#include "factorized/spd_operator.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "factorized/errors.hpp"
#include "factorized/kernels.hpp"

namespace factorized {

namespace {

using Action = std::function<void(std::span<const double>, std::span<double>)>;

constexpr int kMaxRefinements = 3;

double euclidean_norm(std::span<const double> v) { return std::sqrt(kernels::parallel::dot(v, v)); }

void require_dimension(const SpdOperator& op, std::size_t n, const char* where) {
  if (op.dimension() != n) {
    throw DimensionError(std::string(where) + ": operator dimension " + std::to_string(op.dimension()) +
                         " does not match vector length " + std::to_string(n));
  }
}

// Direct banded solve followed by iterative refinement until the residual of
// the original system is below rtol.
std::vector<double> banded_solve(const SymmetricBand& matrix, std::span<const double> rhs, double rtol) {
  const BandCholesky factor(matrix);
  std::vector<double> x(rhs.begin(), rhs.end());
  factor.solve_in_place(x);

  const double rhs_norm = euclidean_norm(rhs);
  std::vector<double> residual(rhs.size());
  for (int pass = 0;; ++pass) {
    matrix.apply(x, residual);
    kernels::parallel::axpby(1.0, rhs, -1.0, residual, residual);
    const double res = euclidean_norm(residual);
    if (res <= rtol * rhs_norm) break;
    if (pass == kMaxRefinements) {
      char message[128];
      std::snprintf(message, sizeof message, "banded solve: relative residual %.3e above tolerance %.3e",
                    res / rhs_norm, rtol);
      throw NumericalError(message);
    }
    factor.solve_in_place(residual);
    kernels::parallel::axpy(1.0, residual, x);
  }
  return x;
}

}  // namespace

GridFunction SpdOperator::solve_shifted(double c, const GridFunction& rhs, double rtol) const {
  require_dimension(*this, rhs.size(), "solve_shifted");
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw ConfigError("solve_shifted: shift must be finite and non-negative, got " + std::to_string(c));
  }
  if (c == 0.0) return rhs;

  if (const SymmetricBand* a = band()) {
    const SymmetricBand shifted = a->combine(c, SymmetricBand::identity(a->size()), 1.0);
    return GridFunction(banded_solve(shifted, rhs.values(), rtol), rhs.h());
  }

  const Action action = [this, c](std::span<const double> in, std::span<double> out) {
    apply(in, out);
    kernels::parallel::axpby(1.0, in, c, out, out);
  };
  return GridFunction(conjugate_gradient(action, rhs.values(), rtol, 10 * dimension() + 100), rhs.h());
}

GridFunction SpdOperator::solve_polynomial(std::span<const double> coefficients, const GridFunction& rhs,
                                           double rtol) const {
  require_dimension(*this, rhs.size(), "solve_polynomial");
  if (coefficients.empty()) throw ConfigError("solve_polynomial: empty coefficient list");

  if (const SymmetricBand* a = band()) {
    return GridFunction(banded_solve(a->polynomial(coefficients), rhs.values(), rtol), rhs.h());
  }

  const std::vector<double> coeffs(coefficients.begin(), coefficients.end());
  const Action action = [this, coeffs](std::span<const double> in, std::span<double> out) {
    apply_polynomial(coeffs, in, out);
  };
  return GridFunction(conjugate_gradient(action, rhs.values(), rtol, 20 * dimension() + 200), rhs.h());
}

void SpdOperator::apply_polynomial(std::span<const double> coefficients, std::span<const double> in,
                                   std::span<double> out) const {
  const std::size_t n = in.size();
  if (coefficients.empty()) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  // Horner: acc = c_d v; acc = A acc + c_k v.
  std::vector<double> acc(n), tmp(n);
  kernels::parallel::axpby(coefficients.back(), in, 0.0, in, acc);
  for (std::size_t k = coefficients.size() - 1; k-- > 0;) {
    apply(acc, tmp);
    kernels::parallel::axpby(1.0, tmp, coefficients[k], in, acc);
  }
  std::copy(acc.begin(), acc.end(), out.begin());
}

BandedOperator::BandedOperator(SymmetricBand band, std::optional<SpectralBounds> bounds)
    : band_(std::move(band)), bounds_(bounds) {}

void BandedOperator::apply(std::span<const double> in, std::span<double> out) const { band_.apply(in, out); }

MatrixFreeOperator::MatrixFreeOperator(std::size_t dimension, Action action,
                                       std::optional<SpectralBounds> bounds)
    : dimension_(dimension), action_(std::move(action)), bounds_(bounds) {
  if (dimension == 0) throw DimensionError("MatrixFreeOperator: zero dimension");
  if (!action_) throw ConfigError("MatrixFreeOperator: empty action");
}

void MatrixFreeOperator::apply(std::span<const double> in, std::span<double> out) const {
  if (in.size() != dimension_ || out.size() != dimension_) {
    throw DimensionError("MatrixFreeOperator::apply: expected length " + std::to_string(dimension_));
  }
  action_(in, out);
}

OperatorPolynomial::OperatorPolynomial(const SpdOperator& base, std::vector<double> coefficients)
    : base_(&base), coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) throw ConfigError("OperatorPolynomial: no coefficients");
}

double OperatorPolynomial::symbol(double lambda) const {
  double acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * lambda + *it;
  return acc;
}

GridFunction OperatorPolynomial::apply(const GridFunction& v) const {
  require_dimension(*base_, v.size(), "OperatorPolynomial::apply");
  GridFunction out = GridFunction::zeros(v.size(), v.h());
  base_->apply_polynomial(coefficients_, v.values(), out.values());
  return out;
}

GridFunction apply(const SpdOperator& op, const GridFunction& v) {
  require_dimension(op, v.size(), "apply");
  GridFunction out = GridFunction::zeros(v.size(), v.h());
  op.apply(v.values(), out.values());
  return out;
}

GridFunction solve_shifted(const SpdOperator& op, double c, const GridFunction& rhs) {
  return op.solve_shifted(c, rhs);
}

GridFunction solve_polynomial(const OperatorPolynomial& poly, const GridFunction& rhs) {
  return poly.base().solve_polynomial(poly.coefficients(), rhs);
}

std::vector<double> conjugate_gradient(const Action& action, std::span<const double> rhs, double rtol,
                                       std::size_t max_iterations) {
  const std::size_t n = rhs.size();
  std::vector<double> x(n, 0.0);
  std::vector<double> r(rhs.begin(), rhs.end());
  std::vector<double> p = r;
  std::vector<double> q(n);

  const double rhs_norm = euclidean_norm(rhs);
  if (rhs_norm == 0.0) return x;

  double rr = kernels::parallel::dot(r, r);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    if (std::sqrt(rr) <= rtol * rhs_norm) {
      // Confirm against the true residual; the recurrence drifts.
      action(x, q);
      kernels::parallel::axpby(1.0, rhs, -1.0, q, r);
      rr = kernels::parallel::dot(r, r);
      if (std::sqrt(rr) <= rtol * rhs_norm) return x;
      p = r;
    }
    action(p, q);
    const double pq = kernels::parallel::dot(p, q);
    if (!(pq > 0.0)) {
      throw NumericalError("conjugate_gradient: breakdown, p^T M p = " + std::to_string(pq) +
                           "; operator is not positive definite");
    }
    const double alpha = rr / pq;
    kernels::parallel::axpy(alpha, p, x);
    kernels::parallel::axpy(-alpha, q, r);
    const double rr_next = kernels::parallel::dot(r, r);
    kernels::parallel::axpby(1.0, r, rr_next / rr, p, p);
    rr = rr_next;
  }
  char message[128];
  std::snprintf(message, sizeof message, "conjugate_gradient: no convergence to rtol %.3e in %zu iterations", rtol,
                max_iterations);
  throw NumericalError(message);
}

}  // namespace factorized
