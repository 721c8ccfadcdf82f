#pragma once

// Time-stepping kernels for du/dt + A u = f with A self-adjoint positive definite.
//
// Every step kernel is a pure function of its inputs. `phi` is the already
// assembled right-hand side of the scheme; integrate() builds it from f.
//
//   backward Euler         (E + tau A)(y' - y)/tau + A y = phi
//   Crank-Nicolson         (E + tau A/2)(y' - y)/tau + A y = phi
//   sm2 (direct)           B (y' - y)/tau + Ã y = phi,  B = E + tau A + tau^2 A^2/2,  Ã = A + tau A^2/2
//   three-level            F^2 (y' - y^n)/tau + (B - F^2)(y^n - y^{n-1})/tau + Ã y^n = phi,  F = E + sigma tau A
//   predictor-corrector    (E + tau A)(ỹ - y)/tau + A y = phi_pred
//                          F^2 (y' - y)/tau + (B - F^2)(ỹ - y)/tau + Ã y = phi_corr

#include <functional>
#include <optional>
#include <vector>

#include "factorized/grid_function.hpp"
#include "factorized/scheme_kind.hpp"
#include "factorized/spd_operator.hpp"

namespace factorized {

GridFunction step_backward_euler(const SpdOperator& A, const GridFunction& y, double tau, const GridFunction& phi);
GridFunction step_crank_nicolson(const SpdOperator& A, const GridFunction& y, double tau, const GridFunction& phi);
GridFunction step_sm2_direct(const SpdOperator& A, const GridFunction& y, double tau, const GridFunction& phi);

/// Two shifted solves with c = sigma tau. Stable for sigma >= sqrt(3/8).
GridFunction step_three_level(const SpdOperator& A, const GridFunction& y_n, const GridFunction& y_nm1, double tau,
                              double sigma, const GridFunction& phi);

/// One shifted solve with c = tau (predictor), two with c = sigma tau
/// (corrector). SM-stable for sigma >= 1/sqrt(2).
GridFunction step_predictor_corrector(const SpdOperator& A, const GridFunction& y, double tau, double sigma,
                                      const GridFunction& phi_pred, const GridFunction& phi_corr);

struct EnergyValue {
  double value = 0.0;
  /// sigma < sqrt(3/8): G may be indefinite and the value is not a norm.
  bool indefinite = false;
};

/// ||(y^{n+1} + y^n)/2||^2_Ã + ||(y^{n+1} - y^n)/tau||^2_G with
/// G = (tau/2)(E + (4 sigma - 3/2) tau A + (2 sigma^2 - 3/4) tau^2 A^2).
/// Non-increasing along homogeneous three-level runs when sigma >= sqrt(3/8).
EnergyValue three_level_energy(const SpdOperator& A, double tau, double sigma, const GridFunction& y_next,
                               const GridFunction& y_curr);

/// (tau/2) (B^{-1} phi, phi): the per-step growth allowance of the energy.
double energy_forcing_bound(const SpdOperator& A, double tau, const GridFunction& phi);

struct SchemeConfig {
  SchemeKind scheme = SchemeKind::crank_nicolson;
  double final_time = 0.0;
  int steps = 0;
  double sigma = 0.0;
  Bootstrap bootstrap = Bootstrap::crank_nicolson_first_level;
  RhsTreatment rhs_treatment = RhsTreatment::lifted_midpoint;

  /// sigma <= 0 picks the scheme's threshold value.
  static SchemeConfig over_interval(SchemeKind scheme, double final_time, int steps, double sigma = 0.0);

  double tau() const { return final_time / steps; }
  /// t^n = n T / N, exactly T at n = N.
  double time_at(int level) const { return (level * final_time) / steps; }

  /// Throws ConfigError on T <= 0, N < 1, or a non-positive sigma.
  void validate() const;

  /// sigma below the proven threshold of a sigma-dependent scheme.
  bool sigma_below_threshold() const;
};

struct SchemeState {
  int level = 0;
  GridFunction current;
  std::optional<GridFunction> previous;  ///< three-level only, level >= 1
};

struct RunReport {
  SchemeConfig config;
  std::vector<double> times;     ///< t^0 .. t^N
  std::vector<double> errors;    ///< epsilon(t^n); filled by callers that know the exact solution
  std::vector<double> energies;  ///< three-level: E_1 .. E_N
  GridFunction final_state;
  bool sigma_below_threshold = false;
  bool energy_indefinite = false;

  double final_error() const { return errors.empty() ? 0.0 : errors.back(); }
};

using RhsSampler = std::function<GridFunction(double)>;
using LevelObserver = std::function<void(int level, double t, const GridFunction& y)>;

/// Advances u0 from t = 0 to t = T, calling `observer` on every level
/// including 0. An empty `rhs` means f = 0. `exact_first_level` is required
/// for the exact three-level bootstrap.
RunReport integrate(const SchemeConfig& config, const SpdOperator& A, const GridFunction& u0,
                    const RhsSampler& rhs = {}, const LevelObserver& observer = {},
                    const std::optional<GridFunction>& exact_first_level = std::nullopt);

}  // namespace factorized
