#pragma once

#include <span>
#include <vector>

namespace factorized {

/// Polynomial helpers; coefficients in ascending powers of z.
namespace poly {

double evaluate(std::span<const double> coefficients, double z);
std::vector<double> derivative(std::span<const double> coefficients);
std::vector<double> multiply(std::span<const double> a, std::span<const double> b);
/// a - b, padded to the longer length.
std::vector<double> subtract(std::span<const double> a, std::span<const double> b);

}  // namespace poly

/// s(z) = P(z) / Q(z), coefficients in ascending powers of z, Q(0) != 0.
class RationalFunction {
 public:
  RationalFunction(std::vector<double> numerator, std::vector<double> denominator);

  std::span<const double> numerator() const { return numerator_; }
  std::span<const double> denominator() const { return denominator_; }

  double operator()(double z) const;
  double derivative(double z) const;

  /// P'Q - PQ': has the sign of s'(z) wherever Q(z) != 0.
  std::vector<double> derivative_numerator() const;

 private:
  std::vector<double> numerator_;
  std::vector<double> denominator_;
};

}  // namespace factorized
