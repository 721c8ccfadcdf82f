#pragma once

// Model problem
//
//   du/dt - d^2u/dx^2 = f(x, t),  0 < x < 1,  0 < t <= T,
//   u(0, t) = u(1, t) = 0,  u(x, 0) = 0,
//
// with manufactured solution u(x, t) = x (1 - x)(1 - exp(-k t)), k = 5.
// The solution is quadratic in x, so the three-point Laplacian is exact on it
// and every measured error is temporal.

#include <functional>

#include "factorized/grid_function.hpp"
#include "factorized/spd_operator.hpp"

namespace factorized {

struct HeatProblem {
  int M = 10;          ///< intervals; h = 1/M, M - 1 interior nodes
  double T = 0.5;
  double decay = 5.0;  ///< k in the manufactured solution

  double h() const { return 1.0 / M; }
  std::size_t interior_nodes() const { return static_cast<std::size_t>(M - 1); }
  double node(std::size_t i) const { return static_cast<double>(i + 1) / M; }

  /// Throws ConfigError unless M >= 2 and T > 0.
  void validate() const;
};

/// (2 v(x) - v(x - h) - v(x + h)) / h^2 on the interior nodes, boundary
/// neighbours dropped. Carries the analytic spectral bounds
/// lambda_k = (4/h^2) sin^2(k pi h / 2), k = 1 .. M-1.
BandedOperator build_operator(int M);

double exact_solution(double x, double t, double decay = 5.0);
double exact_time_derivative(double x, double t, double decay = 5.0);
/// f = du/dt - d^2u/dx^2 = k x (1 - x) e^{-k t} + 2 (1 - e^{-k t}).
double forcing(double x, double t, double decay = 5.0);

/// fn(x_i, t) on the interior nodes of the problem's grid.
GridFunction sample(const HeatProblem& problem, const std::function<double(double, double)>& fn, double t);

GridFunction exact_grid(const HeatProblem& problem, double t);
GridFunction forcing_grid(const HeatProblem& problem, double t);

/// epsilon(t) = ||y - u(., t)|| in the weighted L2 norm of the interior grid.
double error_norm(const GridFunction& y, double t, const HeatProblem& problem);

}  // namespace factorized
