#include "factorized/stability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "factorized/errors.hpp"

namespace factorized {

const double kThreeLevelSigmaMin = std::sqrt(3.0 / 8.0);
const double kFactorizedSigmaMin = 1.0 / std::sqrt(2.0);

namespace {

constexpr int kMaxPadeDegree = 12;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// z = 0 followed by `points` log-spaced samples on [1e-8, z_max].
std::vector<double> sample_grid(double z_max, std::size_t points) {
  const double lo = std::log10(1e-8);
  const double hi = std::log10(z_max);
  std::vector<double> grid;
  grid.reserve(points + 1);
  grid.push_back(0.0);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    grid.push_back(std::pow(10.0, lo + t * (hi - lo)));
  }
  grid.back() = z_max;
  return grid;
}

// |c_0| + |c_1| z + ...: magnitude scale for rounding-aware sign tests.
double absolute_scale(std::span<const double> coefficients, double z) {
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * z + std::abs(*it);
  return acc;
}

// First z on the grid where P'Q - PQ' turns positive, refined by bisection.
std::optional<double> derivative_sign_violation(const RationalFunction& s, std::span<const double> grid) {
  const std::vector<double> dn = s.derivative_numerator();
  auto positive = [&](double z) {
    return poly::evaluate(dn, z) > kMonotoneTolerance * absolute_scale(dn, z);
  };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!positive(grid[i])) continue;
    if (i == 0) return grid[0];
    double lo = grid[i - 1];
    double hi = grid[i];
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (poly::evaluate(dn, mid) > 0.0 ? hi : lo) = mid;
    }
    return hi;
  }
  return std::nullopt;
}

}  // namespace

PadePolynomials pade_polynomials(int l, int m) {
  if (l < 0 || m < 0 || l + m > kMaxPadeDegree) {
    throw ConfigError("pade_polynomials: need l, m >= 0 and l + m <= " + std::to_string(kMaxPadeDegree) +
                      ", got l=" + std::to_string(l) + " m=" + std::to_string(m));
  }
  PadePolynomials out;
  const double total = factorial(l + m);
  out.numerator.resize(static_cast<std::size_t>(l) + 1);
  for (int k = 0; k <= l; ++k) {
    const double c = factorial(l) / total * factorial(l + m - k) / (factorial(k) * factorial(l - k));
    out.numerator[k] = (k % 2 == 0) ? c : -c;
  }
  out.denominator.resize(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) {
    out.denominator[k] = factorial(m) / total * factorial(l + m - k) / (factorial(k) * factorial(m - k));
  }
  return out;
}

RationalFunction pade_approximant(int l, int m) {
  auto [p, q] = pade_polynomials(l, m);
  return RationalFunction(std::move(p), std::move(q));
}

double pade_remainder_order(int l, int m) {
  const auto [p, q] = pade_polynomials(l, m);
  // exp(-z) - P/Q = expm1(-z) - (P - Q)/Q; P(0) = Q(0) = 1 so P - Q carries no constant term.
  const std::vector<double> diff = poly::subtract(p, q);
  const double zs[] = {1e-1, 1e-2, 1e-3};
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double z : zs) {
    const double err = std::abs(std::expm1(-z) - poly::evaluate(diff, z) / poly::evaluate(q, z));
    const double x = std::log(z);
    const double y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  constexpr double n = 3.0;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

RationalFunction factorized_stability_function(double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("factorized_stability_function: sigma must be positive");
  const double s2 = sigma * sigma;
  return RationalFunction({1.0, 2.0 * sigma, s2 - 0.5}, {1.0, 1.0 + 2.0 * sigma, s2 + 2.0 * sigma, s2});
}

RationalFunction three_level_equal_history_function(double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("three_level_equal_history_function: sigma must be positive");
  const double s2 = sigma * sigma;
  return RationalFunction({1.0, 2.0 * sigma - 1.0, s2 - 0.5}, {1.0, 2.0 * sigma, s2});
}

RationalFunction scheme_stability_function(SchemeKind kind, double sigma) {
  switch (kind) {
    case SchemeKind::backward_euler: return pade_approximant(0, 1);
    case SchemeKind::crank_nicolson: return pade_approximant(1, 1);
    case SchemeKind::sm2_direct: return pade_approximant(0, 2);
    case SchemeKind::three_level_factorized: return three_level_equal_history_function(sigma);
    case SchemeKind::predictor_corrector_factorized: return factorized_stability_function(sigma);
  }
  throw ConfigError("scheme_stability_function: unknown scheme");
}

std::vector<double> three_level_condition_polynomial(double sigma) {
  return {1.0, 4.0 * sigma - 1.5, 2.0 * sigma * sigma - 0.75};
}

StabilityVerdict classify(const RationalFunction& s, const ClassifyOptions& options) {
  if (!(options.z_max > 1e-8) || options.points < 2) {
    throw ConfigError("classify: need z_max > 1e-8 and at least two sample points");
  }
  const std::vector<double> grid = sample_grid(options.z_max, options.points);
  std::vector<double> values(grid.size());
  std::transform(grid.begin(), grid.end(), values.begin(), [&](double z) { return s(z); });

  StabilityVerdict v;

  // Stability over the spectrum range [delta tau, upper tau] (or [delta tau, z_max]).
  const double z_lo = options.delta * options.tau;
  const double z_hi = options.upper ? std::min(*options.upper * options.tau, options.z_max) : options.z_max;
  v.rho_sup = std::abs(s(z_lo));
  if (options.upper) v.rho_sup = std::max(v.rho_sup, std::abs(s(z_hi)));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] >= z_lo && grid[i] <= z_hi) v.rho_sup = std::max(v.rho_sup, std::abs(values[i]));
  }
  v.rho_stable = v.rho_sup <= 1.0 + kMonotoneTolerance;
  v.rho_target = std::exp(-z_lo);
  v.rho_strict = v.rho_sup <= v.rho_target;

  // Asymptotic: small at z_max and |s| non-increasing over the last decade.
  v.asymptotically_stable = std::abs(values.back()) < kAsymptoticThreshold;
  for (std::size_t i = 1; i < grid.size() && v.asymptotically_stable; ++i) {
    if (grid[i - 1] < options.z_max / 10.0) continue;
    if (std::abs(values[i]) > std::abs(values[i - 1]) + kMonotoneTolerance) v.asymptotically_stable = false;
  }

  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (values[i] > values[i - 1] + kMonotoneTolerance) {
      v.first_violation_z = grid[i];
      break;
    }
  }
  v.monotone_sampled = !v.first_violation_z.has_value();

  v.derivative_violation_z = derivative_sign_violation(s, grid);
  v.monotone_derivative = !v.derivative_violation_z.has_value();

  v.sm_stable = v.rho_stable && v.asymptotically_stable && v.monotone_sampled && v.monotone_derivative;
  return v;
}

StabilityVerdict classify(const RationalFunction& s, double delta, double tau, double z_max) {
  ClassifyOptions options;
  options.delta = delta;
  options.tau = tau;
  options.z_max = z_max;
  return classify(s, options);
}

bool three_level_condition_holds(double sigma, double z_max) {
  const std::vector<double> g = three_level_condition_polynomial(sigma);
  for (double z : sample_grid(z_max, 4000)) {
    if (poly::evaluate(g, z) < 0.0) return false;
  }
  return true;
}

bool factorized_monotone(double sigma, double z_max) {
  ClassifyOptions options;
  options.z_max = z_max;
  const StabilityVerdict v = classify(factorized_stability_function(sigma), options);
  return v.monotone_sampled && v.monotone_derivative;
}

double find_sigma_threshold(ThresholdFamily family, double lo, double hi, double tol) {
  auto holds = [family](double sigma) {
    return family == ThresholdFamily::three_level_condition ? three_level_condition_holds(sigma)
                                                            : factorized_monotone(sigma);
  };
  if (!(lo < hi) || holds(lo) || !holds(hi)) {
    throw ConfigError("find_sigma_threshold: bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      "] does not straddle the threshold");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (holds(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace factorized
