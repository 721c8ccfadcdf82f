// fschemes: experiments with factorized second-order time-stepping schemes on
// the 1D heat model, plus stability reports for the predictor-corrector family.
//
// Exit codes: 0 success, 1 usage error, 2 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "factorized/errors.hpp"
#include "factorized/experiment.hpp"

namespace fs = std::filesystem;
using namespace factorized;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct Options {
  std::string mode = "run";
  std::string scheme = "sm2";
  int M = 10;
  std::string steps = "10,20,40";
  std::string sigma;
  std::string bootstrap = "cn";
  double T = 0.5;
  std::string out;
};

// Writes `text` to `path`, or to stdout when path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file '" + path + "'");
  file << text;
}

// out.csv -> out_N20.csv
std::string per_run_path(const std::string& out, int N) {
  const fs::path p(out);
  fs::path result = p.parent_path() / (p.stem().string() + "_N" + std::to_string(N) + p.extension().string());
  return result.string();
}

ExperimentPoint base_point(const Options& opt) {
  ExperimentPoint point;
  point.scheme = parse_scheme(opt.scheme);
  point.M = opt.M;
  point.T = opt.T;
  point.bootstrap = parse_bootstrap(opt.bootstrap);
  if (!opt.sigma.empty()) {
    const std::vector<double> sigmas = parse_real_list(opt.sigma);
    if (sigmas.size() != 1) throw ConfigError("--sigma takes a single value in run and convergence modes");
    if (!(sigmas[0] > 0.0)) throw ConfigError("--sigma must be positive");
    point.sigma = sigmas[0];
  }
  HeatProblem{point.M, point.T}.validate();
  return point;
}

void warn_sigma(const RunReport& report) {
  if (report.sigma_below_threshold) {
    std::cerr << "warning: sigma = " << format_number(report.config.sigma) << " is below the proven threshold for "
              << short_name(report.config.scheme) << "; results are not guaranteed stable\n";
  }
}

int run_mode(const Options& opt) {
  const ExperimentPoint base = base_point(opt);
  const std::vector<int> steps = parse_step_list(opt.steps);
  for (int N : steps) {
    ExperimentPoint point = base;
    point.N = N;
    const RunReport report = run_heat_experiment(point);
    warn_sigma(report);

    std::ostringstream csv;
    write_error_csv(csv, report);
    if (opt.out.empty()) {
      if (steps.size() > 1) std::cout << "# scheme=" << opt.scheme << " M=" << opt.M << " N=" << N << '\n';
      emit("", csv.str());
    } else {
      emit(steps.size() == 1 ? opt.out : per_run_path(opt.out, N), csv.str());
    }
    std::cerr << short_name(point.scheme) << " M=" << point.M << " N=" << N
              << " final_error=" << format_number(report.final_error()) << '\n';
  }
  return 0;
}

int convergence_mode(const Options& opt) {
  const ExperimentPoint base = base_point(opt);
  const std::vector<int> steps = parse_step_list(opt.steps);
  SchemeConfig check = SchemeConfig::over_interval(base.scheme, base.T, steps.front(), base.sigma);
  if (check.sigma_below_threshold()) {
    std::cerr << "warning: sigma = " << format_number(check.sigma) << " is below the proven threshold for "
              << short_name(base.scheme) << '\n';
  }
  const std::vector<ConvergenceRow> rows = convergence_table(base, steps);
  std::ostringstream csv;
  write_convergence_csv(csv, rows);
  emit(opt.out, csv.str());
  return 0;
}

int stability_mode(const Options& opt) {
  const std::vector<double> sigmas =
      opt.sigma.empty() ? std::vector<double>{0.5, 0.65, kFactorizedSigmaMin, 0.8, 1.0, std::sqrt(2.0)}
                        : parse_real_list(opt.sigma);
  for (double s : sigmas) {
    if (!(s > 0.0)) throw ConfigError("--sigma values must be positive");
  }
  const StabilityReport report = stability_report(sigmas);
  std::ostringstream text;
  const bool json = fs::path(opt.out).extension() == ".json";
  if (json) {
    write_stability_json(text, report);
  } else {
    write_stability_csv(text, report);
  }
  emit(opt.out, text.str());
  std::cerr << "three-level threshold " << format_number(report.three_level_threshold) << " (sqrt(3/8) = "
            << format_number(kThreeLevelSigmaMin) << ")\n"
            << "factorized monotonicity threshold " << format_number(report.factorized_threshold)
            << " (1/sqrt(2) = " << format_number(kFactorizedSigmaMin) << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factorized second-order time-stepping schemes: heat-model experiments and stability reports"};
  Options opt;
  app.add_option("--mode", opt.mode, "run | convergence | stability")
      ->check(CLI::IsMember({"run", "convergence", "stability"}))
      ->capture_default_str();
  app.add_option("--scheme", opt.scheme, "be | cn | sm2 | three-level | pc-fact")
      ->check(CLI::IsMember({"be", "cn", "sm2", "three-level", "pc-fact"}))
      ->capture_default_str();
  app.add_option("--M", opt.M, "spatial intervals (h = 1/M)")->capture_default_str();
  app.add_option("--N", opt.steps, "time step counts, comma separated")->capture_default_str();
  app.add_option("--sigma", opt.sigma,
                 "weight sigma (default: sqrt(3/8) for three-level, 1/sqrt(2) for pc-fact); "
                 "a comma separated list in stability mode");
  app.add_option("--bootstrap", opt.bootstrap, "three-level first level: exact | cn")
      ->check(CLI::IsMember({"exact", "cn"}))
      ->capture_default_str();
  app.add_option("--T", opt.T, "final time")->capture_default_str();
  app.add_option("--out", opt.out, "output path (default stdout); stability mode writes JSON for *.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (opt.mode == "stability") return stability_mode(opt);
    if (opt.mode == "convergence") return convergence_mode(opt);
    return run_mode(opt);
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}
