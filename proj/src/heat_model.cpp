#include "factorized/heat_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "factorized/errors.hpp"

namespace factorized {

void HeatProblem::validate() const {
  if (M < 2) throw ConfigError("heat problem: M must be at least 2, got " + std::to_string(M));
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("heat problem: T must be positive");
}

BandedOperator build_operator(int M) {
  if (M < 2) throw ConfigError("build_operator: M must be at least 2, got " + std::to_string(M));
  const std::size_t n = static_cast<std::size_t>(M - 1);
  const double h = 1.0 / M;
  const double inv_h2 = 1.0 / (h * h);

  SymmetricBand band(n, 1);
  for (double& d : band.diagonal(0)) d = 2.0 * inv_h2;
  if (n > 1) {
    for (double& d : band.diagonal(1)) d = -inv_h2;
  }

  auto eigenvalue = [&](int k) {
    const double s = std::sin(k * std::numbers::pi * h / 2.0);
    return 4.0 * inv_h2 * s * s;
  };
  return BandedOperator(std::move(band), SpectralBounds{eigenvalue(1), eigenvalue(M - 1)});
}

double exact_solution(double x, double t, double decay) { return x * (1.0 - x) * -std::expm1(-decay * t); }

double exact_time_derivative(double x, double t, double decay) {
  return decay * x * (1.0 - x) * std::exp(-decay * t);
}

double forcing(double x, double t, double decay) {
  return decay * x * (1.0 - x) * std::exp(-decay * t) + 2.0 * -std::expm1(-decay * t);
}

GridFunction sample(const HeatProblem& problem, const std::function<double(double, double)>& fn, double t) {
  problem.validate();
  GridFunction out = GridFunction::zeros(problem.interior_nodes(), problem.h());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(problem.node(i), t);
  return out;
}

GridFunction exact_grid(const HeatProblem& problem, double t) {
  return sample(problem, [k = problem.decay](double x, double s) { return exact_solution(x, s, k); }, t);
}

GridFunction forcing_grid(const HeatProblem& problem, double t) {
  return sample(problem, [k = problem.decay](double x, double s) { return forcing(x, s, k); }, t);
}

double error_norm(const GridFunction& y, double t, const HeatProblem& problem) {
  const GridFunction exact = exact_grid(problem, t);
  require_compatible(y, exact, "error_norm");
  return norm(y - exact);
}

}  // namespace factorized
