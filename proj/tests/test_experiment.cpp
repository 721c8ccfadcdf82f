#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "factorized/errors.hpp"
#include "factorized/experiment.hpp"

using namespace factorized;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::string error_csv(const ExperimentPoint& point) {
  std::ostringstream out;
  write_error_csv(out, run_heat_experiment(point));
  return out.str();
}

}  // namespace

TEST(FormatNumber, SixteenSignificantDigits) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.3333333333333333");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(1.234e-9), "1.234e-09");
  EXPECT_EQ(std::stod(format_number(std::sqrt(2.0))), std::stod("1.414213562373095"));
}

TEST(ParseLists, Steps) {
  EXPECT_EQ(parse_step_list("10,20,40"), (std::vector<int>{10, 20, 40}));
  EXPECT_EQ(parse_step_list(" 5 , 10"), (std::vector<int>{5, 10}));
  EXPECT_THROW(parse_step_list(""), ConfigError);
  EXPECT_THROW(parse_step_list("10,,20"), ConfigError);
  EXPECT_THROW(parse_step_list("10,abc"), ConfigError);
  EXPECT_THROW(parse_step_list("0"), ConfigError);
  EXPECT_THROW(parse_step_list("-4"), ConfigError);
  EXPECT_THROW(parse_step_list("2.5"), ConfigError);
}

TEST(ParseLists, Reals) {
  const auto v = parse_real_list("0.5,1e-1, 2");
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0], 0.5);
  EXPECT_EQ(v[1], 0.1);
  EXPECT_EQ(v[2], 2.0);
  EXPECT_THROW(parse_real_list("x"), ConfigError);
  EXPECT_THROW(parse_real_list("1,inf"), ConfigError);
}

TEST(ErrorCsv, HeaderAndRows) {
  const auto lines = lines_of(error_csv({SchemeKind::backward_euler, 10, 0.5, 10}));
  ASSERT_EQ(lines.size(), 12u);
  EXPECT_EQ(lines[0], "t,error");
  EXPECT_EQ(lines[1], "0,0");
  EXPECT_EQ(lines.back().substr(0, 4), "0.5,");
}

TEST(ErrorCsv, ByteIdenticalAcrossRuns) {
  for (SchemeKind kind : {SchemeKind::sm2_direct, SchemeKind::three_level_factorized,
                          SchemeKind::predictor_corrector_factorized}) {
    const ExperimentPoint point{kind, 10, 0.5, 40};
    EXPECT_EQ(error_csv(point), error_csv(point)) << short_name(kind);
  }
}

TEST(ObservedOrder, Definition) {
  EXPECT_DOUBLE_EQ(*observed_order(4e-3, 1e-3), 2.0);
  EXPECT_DOUBLE_EQ(*observed_order(2e-3, 1e-3), 1.0);
  EXPECT_FALSE(observed_order(1e-15, 1e-16).has_value());
  EXPECT_FALSE(observed_order(1e-3, 0.0).has_value());
}

TEST(ConvergenceTable, MatchesIndependentRuns) {
  const ExperimentPoint base{SchemeKind::crank_nicolson, 10, 0.5, 0};
  const std::vector<int> steps{10, 20, 40};
  const auto rows = convergence_table(base, steps);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_FALSE(rows[0].observed_order.has_value());
  EXPECT_FALSE(rows[0].indeterminate);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ExperimentPoint point = base;
    point.N = steps[i];
    EXPECT_EQ(rows[i].final_error, run_heat_experiment(point).final_error());
  }
  EXPECT_DOUBLE_EQ(*rows[2].observed_order, std::log2(rows[1].final_error / rows[2].final_error));
}

TEST(ConvergenceTable, RejectsNonDoublingSteps) {
  const ExperimentPoint base{SchemeKind::backward_euler, 10, 0.5, 0};
  for (const std::vector<int>& steps : {std::vector<int>{10, 30}, std::vector<int>{20, 10}, std::vector<int>{}}) {
    EXPECT_THROW(convergence_table(base, steps), ConfigError);
  }
}

TEST(ConvergenceCsv, Format) {
  std::vector<ConvergenceRow> rows(3);
  rows[0].N = 10;
  rows[0].final_error = 0.004;
  rows[1].N = 20;
  rows[1].final_error = 0.001;
  rows[1].observed_order = 2.0;
  rows[2].N = 40;
  rows[2].final_error = 0.0;
  rows[2].indeterminate = true;
  std::ostringstream out;
  write_convergence_csv(out, rows);
  EXPECT_EQ(out.str(), "N,final_error,observed_order\n10,0.004,\n20,0.001,2\n40,0,indeterminate\n");
}

TEST(StabilityReport, RowsAndThresholds) {
  const std::vector<double> sigmas{0.65, 0.8};
  const StabilityReport report = stability_report(sigmas);
  ASSERT_EQ(report.rows.size(), 2u);

  EXPECT_FALSE(report.rows[0].verdict.sm_stable);
  EXPECT_TRUE(report.rows[0].verdict.first_violation_z.has_value());
  EXPECT_TRUE(report.rows[0].three_level_condition);

  EXPECT_TRUE(report.rows[1].verdict.sm_stable);
  EXPECT_FALSE(report.rows[1].verdict.first_violation_z.has_value());
  EXPECT_TRUE(report.rows[1].three_level_condition);

  EXPECT_NEAR(report.three_level_threshold, std::sqrt(3.0 / 8.0), 1e-3);
  EXPECT_NEAR(report.factorized_threshold, 1.0 / std::sqrt(2.0), 1e-3);
}

TEST(StabilityCsv, Format) {
  const std::vector<double> sigmas{0.65, 0.8};
  std::ostringstream out;
  write_stability_csv(out, stability_report(sigmas));
  const auto lines = lines_of(out.str());
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "sigma,rho_stable,asymptotic,sm_stable,first_violation_z");
  EXPECT_EQ(lines[1].substr(0, 21), "0.65,true,true,false,");
  EXPECT_GT(lines[1].size(), 21u);
  EXPECT_EQ(lines[2], "0.8,true,true,true,");
}

TEST(StabilityJson, Structure) {
  const std::vector<double> sigmas{0.5, 1.0};
  std::ostringstream out;
  write_stability_json(out, stability_report(sigmas));
  const auto doc = nlohmann::json::parse(out.str());
  ASSERT_EQ(doc["rows"].size(), 2u);
  EXPECT_EQ(doc["rows"][0]["sigma"].get<double>(), 0.5);
  EXPECT_FALSE(doc["rows"][0]["sm_stable"].get<bool>());
  EXPECT_FALSE(doc["rows"][0]["three_level_condition"].get<bool>());
  EXPECT_TRUE(doc["rows"][1]["sm_stable"].get<bool>());
  EXPECT_TRUE(doc["rows"][1]["first_violation_z"].is_null());
  EXPECT_TRUE(doc.contains("three_level_threshold"));
  EXPECT_TRUE(doc.contains("factorized_threshold"));
}

TEST(HeatExperiment, RejectsBadPoints) {
  EXPECT_THROW(run_heat_experiment({SchemeKind::backward_euler, 1, 0.5, 10}), ConfigError);
  EXPECT_THROW(run_heat_experiment({SchemeKind::backward_euler, 10, 0.5, 0}), ConfigError);
  EXPECT_THROW(run_heat_experiment({SchemeKind::backward_euler, 10, -0.5, 10}), ConfigError);
}
