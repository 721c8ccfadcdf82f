#include "factorized/experiment.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <ostream>

#include <json.hpp>

#include "factorized/errors.hpp"

namespace factorized {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_commas(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

}  // namespace

RunReport run_heat_experiment(const ExperimentPoint& point) {
  HeatProblem problem{point.M, point.T};
  problem.validate();

  SchemeConfig config = SchemeConfig::over_interval(point.scheme, point.T, point.N, point.sigma);
  config.bootstrap = point.bootstrap;
  config.rhs_treatment = point.rhs_treatment;
  config.validate();

  const BandedOperator A = build_operator(point.M);
  const GridFunction u0 = exact_grid(problem, 0.0);

  std::optional<GridFunction> exact_first;
  if (point.scheme == SchemeKind::three_level_factorized && point.bootstrap == Bootstrap::exact_first_level) {
    exact_first = exact_grid(problem, config.time_at(1));
  }

  std::vector<double> errors;
  errors.reserve(static_cast<std::size_t>(point.N) + 1);
  RunReport report = integrate(
      config, A, u0, [&](double t) { return forcing_grid(problem, t); },
      [&](int, double t, const GridFunction& y) { errors.push_back(error_norm(y, t, problem)); }, exact_first);
  report.errors = std::move(errors);
  return report;
}

std::optional<double> observed_order(double coarse_error, double fine_error) {
  if (!(coarse_error >= kErrorFloor) || !(fine_error >= kErrorFloor)) return std::nullopt;
  return std::log2(coarse_error / fine_error);
}

std::vector<ConvergenceRow> convergence_table(const ExperimentPoint& base, std::span<const int> steps) {
  if (steps.empty()) throw ConfigError("convergence_table: empty step list");
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (steps[i] != 2 * steps[i - 1]) {
      throw ConfigError("convergence_table: step counts must double, got " + std::to_string(steps[i - 1]) +
                        " then " + std::to_string(steps[i]));
    }
  }

  std::vector<double> finals(steps.size(), 0.0);
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(steps.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      ExperimentPoint point = base;
      point.N = steps[i];
      finals[i] = run_heat_experiment(point).final_error();
    } catch (...) {
#pragma omp critical(factorized_convergence_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ConvergenceRow> rows(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    rows[i].N = steps[i];
    rows[i].final_error = finals[i];
    if (i > 0) {
      rows[i].observed_order = observed_order(finals[i - 1], finals[i]);
      rows[i].indeterminate = !rows[i].observed_order.has_value();
    }
  }
  return rows;
}

StabilityReport stability_report(std::span<const double> sigmas) {
  StabilityReport report;
  for (double sigma : sigmas) {
    StabilityRow row;
    row.sigma = sigma;
    row.verdict = classify(factorized_stability_function(sigma));
    row.three_level_condition = three_level_condition_holds(sigma);
    report.rows.push_back(row);
  }
  report.three_level_threshold = find_sigma_threshold(ThresholdFamily::three_level_condition);
  report.factorized_threshold = find_sigma_threshold(ThresholdFamily::factorized_monotonicity);
  return report;
}

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.16g", value);
  return buffer;
}

std::vector<int> parse_step_list(std::string_view text) {
  std::vector<int> out;
  for (const std::string& part : split_commas(text)) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (part.empty() || used != part.size() || value < 1) {
      throw ConfigError("invalid step count '" + part + "' in list '" + std::string(text) + "'");
    }
    out.push_back(value);
  }
  return out;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (const std::string& part : split_commas(text)) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (part.empty() || used != part.size() || !std::isfinite(value)) {
      throw ConfigError("invalid number '" + part + "' in list '" + std::string(text) + "'");
    }
    out.push_back(value);
  }
  return out;
}

void write_error_csv(std::ostream& out, const RunReport& report) {
  out << "t,error\n";
  for (std::size_t n = 0; n < report.errors.size(); ++n) {
    out << format_number(report.times[n]) << ',' << format_number(report.errors[n]) << '\n';
  }
}

void write_convergence_csv(std::ostream& out, std::span<const ConvergenceRow> rows) {
  out << "N,final_error,observed_order\n";
  for (const ConvergenceRow& row : rows) {
    out << row.N << ',' << format_number(row.final_error) << ',';
    if (row.observed_order) {
      out << format_number(*row.observed_order);
    } else if (row.indeterminate) {
      out << "indeterminate";
    }
    out << '\n';
  }
}

void write_stability_csv(std::ostream& out, const StabilityReport& report) {
  out << "sigma,rho_stable,asymptotic,sm_stable,first_violation_z\n";
  for (const StabilityRow& row : report.rows) {
    const StabilityVerdict& v = row.verdict;
    out << format_number(row.sigma) << ',' << (v.rho_stable ? "true" : "false") << ','
        << (v.asymptotically_stable ? "true" : "false") << ',' << (v.sm_stable ? "true" : "false") << ',';
    if (v.first_violation_z) out << format_number(*v.first_violation_z);
    out << '\n';
  }
}

void write_stability_json(std::ostream& out, const StabilityReport& report) {
  nlohmann::ordered_json doc;
  doc["three_level_threshold"] = report.three_level_threshold;
  doc["factorized_threshold"] = report.factorized_threshold;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const StabilityRow& row : report.rows) {
    const StabilityVerdict& v = row.verdict;
    nlohmann::ordered_json item;
    item["sigma"] = row.sigma;
    item["rho_stable"] = v.rho_stable;
    item["asymptotic"] = v.asymptotically_stable;
    item["sm_stable"] = v.sm_stable;
    item["first_violation_z"] = v.first_violation_z ? nlohmann::ordered_json(*v.first_violation_z) : nullptr;
    item["derivative_violation_z"] =
        v.derivative_violation_z ? nlohmann::ordered_json(*v.derivative_violation_z) : nullptr;
    item["three_level_condition"] = row.three_level_condition;
    doc["rows"].push_back(std::move(item));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace factorized
