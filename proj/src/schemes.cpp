#include "factorized/schemes.hpp"

#include <cmath>
#include <string>

#include "factorized/errors.hpp"
#include "factorized/stability.hpp"

namespace factorized {

namespace {

void require_step(double tau, const char* where) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ConfigError(std::string(where) + ": time step must be positive, got " + std::to_string(tau));
  }
}

void require_sigma(double sigma, const char* where) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ConfigError(std::string(where) + ": sigma must be positive, got " + std::to_string(sigma));
  }
}

// Ã v = A v + (tau/2) A^2 v
GridFunction apply_tilde(const SpdOperator& A, const GridFunction& v, double tau) {
  const GridFunction av = apply(A, v);
  return av + (0.5 * tau) * apply(A, av);
}

// (B - F^2) d = (1 - 2 sigma) tau A d + (1/2 - sigma^2) tau^2 A^2 d
GridFunction apply_defect(const SpdOperator& A, const GridFunction& d, double tau, double sigma) {
  const GridFunction ad = apply(A, d);
  return ((1.0 - 2.0 * sigma) * tau) * ad + ((0.5 - sigma * sigma) * tau * tau) * apply(A, ad);
}

// y + F^{-2} r with F = E + sigma tau A: the two factored solves.
GridFunction factored_update(const SpdOperator& A, const GridFunction& y, double tau, double sigma,
                             const GridFunction& r) {
  const double c = sigma * tau;
  return y + A.solve_shifted(c, A.solve_shifted(c, r));
}

}  // namespace

GridFunction step_backward_euler(const SpdOperator& A, const GridFunction& y, double tau, const GridFunction& phi) {
  require_step(tau, "step_backward_euler");
  require_compatible(y, phi, "step_backward_euler");
  // (E + tau A) y' = y + tau phi
  return A.solve_shifted(tau, y + tau * phi);
}

GridFunction step_crank_nicolson(const SpdOperator& A, const GridFunction& y, double tau, const GridFunction& phi) {
  require_step(tau, "step_crank_nicolson");
  require_compatible(y, phi, "step_crank_nicolson");
  return y + A.solve_shifted(0.5 * tau, tau * (phi - apply(A, y)));
}

GridFunction step_sm2_direct(const SpdOperator& A, const GridFunction& y, double tau, const GridFunction& phi) {
  require_step(tau, "step_sm2_direct");
  require_compatible(y, phi, "step_sm2_direct");
  // B - tau Ã = E, so the scheme is B y' = y + tau phi.
  const double coeffs[] = {1.0, tau, 0.5 * tau * tau};
  return A.solve_polynomial(coeffs, y + tau * phi);
}

GridFunction step_three_level(const SpdOperator& A, const GridFunction& y_n, const GridFunction& y_nm1, double tau,
                              double sigma, const GridFunction& phi) {
  require_step(tau, "step_three_level");
  require_sigma(sigma, "step_three_level");
  require_compatible(y_n, y_nm1, "step_three_level");
  require_compatible(y_n, phi, "step_three_level");
  GridFunction r = tau * phi;
  r -= apply_defect(A, y_n - y_nm1, tau, sigma);
  r -= tau * apply_tilde(A, y_n, tau);
  return factored_update(A, y_n, tau, sigma, r);
}

GridFunction step_predictor_corrector(const SpdOperator& A, const GridFunction& y, double tau, double sigma,
                                      const GridFunction& phi_pred, const GridFunction& phi_corr) {
  require_step(tau, "step_predictor_corrector");
  require_sigma(sigma, "step_predictor_corrector");
  require_compatible(y, phi_corr, "step_predictor_corrector");
  const GridFunction predicted = step_backward_euler(A, y, tau, phi_pred);
  GridFunction r = tau * phi_corr;
  r -= apply_defect(A, predicted - y, tau, sigma);
  r -= tau * apply_tilde(A, y, tau);
  return factored_update(A, y, tau, sigma, r);
}

EnergyValue three_level_energy(const SpdOperator& A, double tau, double sigma, const GridFunction& y_next,
                               const GridFunction& y_curr) {
  require_step(tau, "three_level_energy");
  require_sigma(sigma, "three_level_energy");
  require_compatible(y_next, y_curr, "three_level_energy");

  const GridFunction v = 0.5 * (y_next + y_curr);
  const GridFunction w = (1.0 / tau) * (y_next - y_curr);

  // (Ã v, v) = (A v, v) + (tau/2)(A v, A v), A self-adjoint.
  const GridFunction av = apply(A, v);
  const double tilde_term = inner_product(av, v) + 0.5 * tau * inner_product(av, av);

  const GridFunction aw = apply(A, w);
  const double g_term = 0.5 * tau *
                        (inner_product(w, w) + (4.0 * sigma - 1.5) * tau * inner_product(aw, w) +
                         (2.0 * sigma * sigma - 0.75) * tau * tau * inner_product(aw, aw));

  return {tilde_term + g_term, sigma < kThreeLevelSigmaMin};
}

double energy_forcing_bound(const SpdOperator& A, double tau, const GridFunction& phi) {
  require_step(tau, "energy_forcing_bound");
  const double coeffs[] = {1.0, tau, 0.5 * tau * tau};
  return 0.5 * tau * inner_product(A.solve_polynomial(coeffs, phi), phi);
}

SchemeConfig SchemeConfig::over_interval(SchemeKind scheme, double final_time, int steps, double sigma) {
  SchemeConfig config;
  config.scheme = scheme;
  config.final_time = final_time;
  config.steps = steps;
  if (sigma > 0.0) {
    config.sigma = sigma;
  } else if (scheme == SchemeKind::three_level_factorized) {
    config.sigma = kThreeLevelSigmaMin;
  } else if (scheme == SchemeKind::predictor_corrector_factorized) {
    config.sigma = kFactorizedSigmaMin;
  }
  return config;
}

void SchemeConfig::validate() const {
  if (!(final_time > 0.0) || !std::isfinite(final_time)) {
    throw ConfigError("final time must be positive, got " + std::to_string(final_time));
  }
  if (steps < 1) throw ConfigError("step count must be at least 1, got " + std::to_string(steps));
  if (uses_sigma(scheme)) require_sigma(sigma, short_name(scheme).data());
}

bool SchemeConfig::sigma_below_threshold() const {
  switch (scheme) {
    case SchemeKind::three_level_factorized: return sigma < kThreeLevelSigmaMin;
    case SchemeKind::predictor_corrector_factorized: return sigma < kFactorizedSigmaMin;
    default: return false;
  }
}

RunReport integrate(const SchemeConfig& config, const SpdOperator& A, const GridFunction& u0, const RhsSampler& rhs,
                    const LevelObserver& observer, const std::optional<GridFunction>& exact_first_level) {
  config.validate();
  if (A.dimension() != u0.size()) {
    throw DimensionError("integrate: operator dimension " + std::to_string(A.dimension()) +
                         " does not match initial state length " + std::to_string(u0.size()));
  }
  const bool three_level = config.scheme == SchemeKind::three_level_factorized;
  if (three_level && config.bootstrap == Bootstrap::exact_first_level) {
    if (!exact_first_level) throw ConfigError("integrate: exact bootstrap requires the exact first level");
    require_compatible(u0, *exact_first_level, "integrate");
  }

  const double tau = config.tau();
  const double sigma = config.sigma;

  auto forcing = [&](double t) {
    if (!rhs) return GridFunction::zeros(u0.size(), u0.h());
    GridFunction f = rhs(t);
    require_compatible(u0, f, "integrate: rhs sample");
    return f;
  };
  auto lifted = [&](const GridFunction& f) {
    return config.rhs_treatment == RhsTreatment::lifted_midpoint ? f + (0.5 * tau) * apply(A, f) : f;
  };

  RunReport report;
  report.config = config;
  report.sigma_below_threshold = config.sigma_below_threshold();
  report.energy_indefinite = three_level && sigma < kThreeLevelSigmaMin;
  report.times.reserve(static_cast<std::size_t>(config.steps) + 1);

  SchemeState state{0, u0, std::nullopt};
  auto emit = [&] {
    const double t = config.time_at(state.level);
    report.times.push_back(t);
    if (observer) observer(state.level, t, state.current);
  };
  emit();

  for (int n = 0; n < config.steps; ++n) {
    const GridFunction f_mid = forcing(0.5 * (config.time_at(n) + config.time_at(n + 1)));
    GridFunction next;
    switch (config.scheme) {
      case SchemeKind::backward_euler:
        next = step_backward_euler(A, state.current, tau, f_mid);
        break;
      case SchemeKind::crank_nicolson:
        next = step_crank_nicolson(A, state.current, tau, f_mid);
        break;
      case SchemeKind::sm2_direct:
        next = step_sm2_direct(A, state.current, tau, lifted(f_mid));
        break;
      case SchemeKind::predictor_corrector_factorized:
        next = step_predictor_corrector(A, state.current, tau, sigma, f_mid, lifted(f_mid));
        break;
      case SchemeKind::three_level_factorized:
        if (n == 0) {
          next = config.bootstrap == Bootstrap::exact_first_level ? *exact_first_level
                                                                   : step_crank_nicolson(A, state.current, tau, f_mid);
        } else {
          next = step_three_level(A, state.current, *state.previous, tau, sigma, lifted(f_mid));
        }
        report.energies.push_back(three_level_energy(A, tau, sigma, next, state.current).value);
        break;
    }
    state.previous = three_level ? std::optional<GridFunction>(std::move(state.current)) : std::nullopt;
    state.current = std::move(next);
    ++state.level;
    emit();
  }

  report.final_state = state.current;
  return report;
}

}  // namespace factorized
