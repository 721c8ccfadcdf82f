#include "factorized/rational.hpp"

#include <algorithm>

#include "factorized/errors.hpp"

namespace factorized {

namespace poly {

double evaluate(std::span<const double> coefficients, double z) {
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<double> derivative(std::span<const double> coefficients) {
  if (coefficients.size() <= 1) return {0.0};
  std::vector<double> out(coefficients.size() - 1);
  for (std::size_t k = 1; k < coefficients.size(); ++k) out[k - 1] = static_cast<double>(k) * coefficients[k];
  return out;
}

std::vector<double> multiply(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {0.0};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<double> subtract(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

}  // namespace poly

RationalFunction::RationalFunction(std::vector<double> numerator, std::vector<double> denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
  if (numerator_.empty()) numerator_.push_back(0.0);
  if (denominator_.empty() || denominator_[0] == 0.0) {
    throw ConfigError("RationalFunction: denominator must have a nonzero constant term");
  }
}

double RationalFunction::operator()(double z) const {
  return poly::evaluate(numerator_, z) / poly::evaluate(denominator_, z);
}

double RationalFunction::derivative(double z) const {
  const double q = poly::evaluate(denominator_, z);
  return poly::evaluate(derivative_numerator(), z) / (q * q);
}

std::vector<double> RationalFunction::derivative_numerator() const {
  return poly::subtract(poly::multiply(poly::derivative(numerator_), denominator_),
                        poly::multiply(numerator_, poly::derivative(denominator_)));
}

}  // namespace factorized
