#pragma once

// Scalar stability functions s(z), z = tau * lambda, and their classification.
//
// A scheme is SM-stable when it is stable (|s| <= 1 on the spectrum),
// asymptotically stable (s(z) -> 0 as z -> infinity) and s is monotonically
// non-increasing on z >= 0, so higher harmonics decay faster than lower ones.

#include <optional>
#include <vector>

#include "factorized/rational.hpp"
#include "factorized/scheme_kind.hpp"

namespace factorized {

/// sqrt(3/8): smallest weight for which the three-level factorized scheme is stable.
extern const double kThreeLevelSigmaMin;
/// 1/sqrt(2): smallest weight for which the predictor-corrector scheme is SM-stable.
extern const double kFactorizedSigmaMin;

struct PadePolynomials {
  std::vector<double> numerator;    ///< P_lm, degree l
  std::vector<double> denominator;  ///< Q_lm, degree m
};

/// Pade polynomials of exp(-z) from the factorial formulas. Requires l, m >= 0 and l + m <= 12.
PadePolynomials pade_polynomials(int l, int m);
RationalFunction pade_approximant(int l, int m);

/// Least-squares slope of log|exp(-z) - R_lm(z)| against log z over z in {1e-1, 1e-2, 1e-3}.
double pade_remainder_order(int l, int m);

/// Predictor-corrector factorized scheme:
/// (1 + 2 sigma z + (sigma^2 - 1/2) z^2) / (1 + (1 + 2 sigma) z + (sigma^2 + 2 sigma) z^2 + sigma^2 z^3).
RationalFunction factorized_stability_function(double sigma);

/// One three-level step with y^n = y^{n-1}: ((1 + sigma z)^2 - z (1 + z / 2)) / (1 + sigma z)^2.
RationalFunction three_level_equal_history_function(double sigma);

/// Amplification of one homogeneous step of `kind` on an eigenvector
/// (three-level: with equal history).
RationalFunction scheme_stability_function(SchemeKind kind, double sigma);

/// g(z) = 1 + (4 sigma - 3/2) z + (2 sigma^2 - 3/4) z^2; the three-level scheme is
/// stable when g >= 0 on z >= 0.
std::vector<double> three_level_condition_polynomial(double sigma);

struct StabilityVerdict {
  bool rho_stable = false;              ///< sup |s| <= 1 over the checked range
  double rho_sup = 0.0;                 ///< that supremum
  double rho_target = 1.0;              ///< exp(-delta tau)
  bool rho_strict = false;              ///< rho_sup <= exp(-delta tau)
  bool asymptotically_stable = false;
  bool monotone_sampled = false;        ///< adjacent grid values non-increasing
  bool monotone_derivative = false;     ///< P'Q - PQ' never turns positive
  bool sm_stable = false;
  std::optional<double> first_violation_z;       ///< first grid point where s increases
  std::optional<double> derivative_violation_z;  ///< root where s' turns positive
};

struct ClassifyOptions {
  double delta = 0.0;  ///< lower spectral bound
  double tau = 1.0;
  double z_max = 1e8;
  /// Upper spectral bound; when set the stability sup runs over [delta tau, upper tau].
  std::optional<double> upper = std::nullopt;
  std::size_t points = 4000;  ///< log-spaced samples on [1e-8, z_max], plus z = 0
};

inline constexpr double kMonotoneTolerance = 1e-12;
inline constexpr double kAsymptoticThreshold = 1e-4;

StabilityVerdict classify(const RationalFunction& s, const ClassifyOptions& options = {});
StabilityVerdict classify(const RationalFunction& s, double delta, double tau, double z_max = 1e8);

bool three_level_condition_holds(double sigma, double z_max = 1e8);
bool factorized_monotone(double sigma, double z_max = 1e8);

enum class ThresholdFamily {
  three_level_condition,
  factorized_monotonicity,
};

/// Smallest sigma in [lo, hi] satisfying the family's condition, by bisection.
/// Throws ConfigError if the condition fails at hi or holds at lo.
double find_sigma_threshold(ThresholdFamily family, double lo = 0.3, double hi = 1.2, double tol = 1e-4);

}  // namespace factorized
