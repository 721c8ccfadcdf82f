#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "factorized/heat_model.hpp"
#include "factorized/schemes.hpp"
#include "factorized/stability.hpp"

namespace factorized {

/// One run of the heat model.
struct ExperimentPoint {
  SchemeKind scheme = SchemeKind::crank_nicolson;
  int M = 10;
  double T = 0.5;
  int N = 10;
  double sigma = 0.0;  ///< <= 0: the scheme's threshold value
  Bootstrap bootstrap = Bootstrap::crank_nicolson_first_level;
  RhsTreatment rhs_treatment = RhsTreatment::lifted_midpoint;
};

/// Integrates the heat model from the exact (zero) initial state and records
/// epsilon(t^n) for n = 0 .. N.
RunReport run_heat_experiment(const ExperimentPoint& point);

/// Final errors below this floor make the observed order indeterminate.
inline constexpr double kErrorFloor = 1e-14;

struct ConvergenceRow {
  int N = 0;
  double final_error = 0.0;
  std::optional<double> observed_order;  ///< log2(eps_{N/2} / eps_N); absent on the first row
  bool indeterminate = false;            ///< an error of the pair was below kErrorFloor
};

/// p = log2(coarse / fine), or nullopt when either error is below the floor.
std::optional<double> observed_order(double coarse_error, double fine_error);

/// Runs every N (strictly doubling) and reports the pairwise observed orders.
/// Points run concurrently; the table is assembled in N order.
std::vector<ConvergenceRow> convergence_table(const ExperimentPoint& base, std::span<const int> steps);

struct StabilityRow {
  double sigma = 0.0;
  StabilityVerdict verdict;           ///< classification of the predictor-corrector function
  bool three_level_condition = false;
};

struct StabilityReport {
  std::vector<StabilityRow> rows;
  double three_level_threshold = 0.0;
  double factorized_threshold = 0.0;
};

StabilityReport stability_report(std::span<const double> sigmas);

/// 16 significant digits, locale independent.
std::string format_number(double value);

/// "10,20,40" -> {10, 20, 40}. Throws ConfigError on malformed or non-positive entries.
std::vector<int> parse_step_list(std::string_view text);
std::vector<double> parse_real_list(std::string_view text);

/// Header `t,error`.
void write_error_csv(std::ostream& out, const RunReport& report);
/// Header `N,final_error,observed_order`; blank order on the first row, `indeterminate` below the floor.
void write_convergence_csv(std::ostream& out, std::span<const ConvergenceRow> rows);
/// Header `sigma,rho_stable,asymptotic,sm_stable,first_violation_z`; blank z when monotone.
void write_stability_csv(std::ostream& out, const StabilityReport& report);
void write_stability_json(std::ostream& out, const StabilityReport& report);

}  // namespace factorized
