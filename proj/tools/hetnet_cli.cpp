// SPDX-License-Identifier: Apache-2.0
//
// hetnet: batch front end for the analytic and Monte Carlo engines.
//
//   hetnet coverage-sweep --config net.ini --out cov.csv --engines analytic,mc
//   hetnet validate --config net.ini --trials 10000
//
// Exit status: 0 success, 1 validation failure or runtime error, 2 bad
// configuration or arguments.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "hetnet/config.hpp"
#include "hetnet/error.hpp"
#include "hetnet/sweep.hpp"
#include "hetnet/validate.hpp"

namespace {

using namespace hetnet;

constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr double kLiteralHalfWidth = 2500.0;  // 5 km x 5 km

struct CommonArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 10000;
  int threads = 0;
  bool literal_window = false;
  std::string cluster_form = "joint";
  std::string macro_conditioning = "exact";
};

struct SweepArgs {
  std::vector<std::string> engines{"analytic", "mc"};
  std::vector<std::string> strategies{"SISO", "SUBF", "SDMA"};
  std::vector<std::string> modes{"noncooperative", "cooperative"};
  std::vector<double> grid;
  std::string variable;
  double threshold_db = 0.0;
};

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

template <class T, class Parse>
std::vector<T> parse_list(const std::vector<std::string>& items, Parse parse, const char* what) {
  std::vector<T> out;
  for (const auto& s : split_list(items)) {
    auto v = parse(s);
    if (!v) throw ConfigError(fmt::format("unknown {} '{}'", what, s));
    out.push_back(*v);
  }
  return out;
}

Scenario load(const CommonArgs& a) {
  Scenario sc = a.config.empty() ? reference_scenario() : load_scenario(a.config);
  if (a.seed) sc.numerics.seed = *a.seed;
  return sc;
}

AnalysisOptions analysis_options(const CommonArgs& a) {
  AnalysisOptions o;
  if (a.cluster_form == "printed") o.cluster_signal = ClusterSignalModel::common_fading;
  if (a.macro_conditioning == "surrogate") o.macro_conditioning = MacroConditioning::surrogate;
  return o;
}

std::vector<double> default_grid(SweepVariable v) {
  switch (v) {
    case SweepVariable::threshold_db: return {-10, -5, 0, 5, 10, 15, 20};
    case SweepVariable::bias_ratio: return {0.01, 0.03, 0.1, 0.3, 1, 3, 10, 30, 100};
    case SweepVariable::density_ratio: return {1, 2, 4, 8, 16, 32, 64};
    case SweepVariable::power_macro_dbm: return {30, 35, 40, 45, 50};
  }
  return {};
}

void write_sidecar(const std::string& out_path, const Scenario& sc,
                   const std::vector<std::pair<std::string, std::string>>& run) {
  const std::string path = out_path + ".resolved.ini";
  std::ofstream f(path);
  if (!f) throw ConfigError(fmt::format("cannot write '{}'", path));
  write_resolved_config(f, sc, run);
}

std::vector<std::pair<std::string, std::string>> common_run_settings(const std::string& command, const CommonArgs& a,
                                                                     const Scenario& sc) {
  return {{"command", command},
          {"seed", std::to_string(sc.numerics.seed)},
          {"trials", std::to_string(a.trials)},
          {"window", a.literal_window ? "literal" : "auto"},
          {"cluster_form", a.cluster_form},
          {"macro_conditioning", a.macro_conditioning}};
}

int run_sweep_command(const std::string& command, Metric metric, SweepVariable default_variable,
                      const CommonArgs& a, const SweepArgs& s) {
  const Scenario sc = load(a);
  SweepSpec spec;
  spec.variable = default_variable;
  if (!s.variable.empty()) {
    auto v = parse_sweep_variable(s.variable);
    if (!v) throw ConfigError(fmt::format("unknown sweep variable '{}'", s.variable));
    spec.variable = *v;
  }
  spec.metric = metric;
  spec.grid = s.grid.empty() ? default_grid(spec.variable) : s.grid;
  spec.strategies = parse_list<Strategy>(s.strategies, parse_strategy, "strategy");
  spec.modes = parse_list<Mode>(s.modes, parse_mode, "mode");
  spec.engines = parse_list<Engine>(s.engines, parse_engine, "engine");
  spec.threshold_db = s.threshold_db;
  spec.trials = a.trials;
  spec.master_seed = sc.numerics.seed;
  spec.threads = a.threads;
  if (a.literal_window) spec.window_half_width = kLiteralHalfWidth;
  spec.analysis = analysis_options(a);
  try {
    spec.validate();
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }

  auto run = common_run_settings(command, a, sc);
  run.emplace_back("variable", std::string(to_string(spec.variable)));
  run.emplace_back("metric", std::string(to_string(spec.metric)));
  run.emplace_back("grid", fmt::format("{}", fmt::join(spec.grid, ",")));
  run.emplace_back("strategies", fmt::format("{}", fmt::join(split_list(s.strategies), ",")));
  run.emplace_back("modes", fmt::format("{}", fmt::join(split_list(s.modes), ",")));
  run.emplace_back("engines", fmt::format("{}", fmt::join(split_list(s.engines), ",")));
  run.emplace_back("threshold_db", format_number(spec.threshold_db));
  write_sidecar(a.out, sc, run);

  const auto rows = run_sweep(spec, sc);
  std::ofstream out(a.out);
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", a.out));
  write_csv(out, rows);
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.error.empty() ? 0 : 1;
  std::cerr << fmt::format("{}: {} rows written to {}", command, rows.size(), a.out);
  if (failed) std::cerr << fmt::format(" ({} cells failed, see error column)", failed);
  std::cerr << '\n';
  return 0;
}

int run_validate_command(const CommonArgs& a, std::size_t association_trials) {
  const Scenario sc = load(a);
  ValidationSettings st;
  st.trials = a.trials;
  st.association_trials = association_trials;
  st.seed = sc.numerics.seed;
  st.threads = a.threads;
  if (a.literal_window) st.window_half_width = kLiteralHalfWidth;

  auto run = common_run_settings("validate", a, sc);
  run.emplace_back("association_trials", std::to_string(association_trials));
  write_sidecar(a.out, sc, run);

  const ValidationReport report = run_validation(sc, st);
  print_report(std::cout, report);
  std::ofstream out(a.out);
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", a.out));
  write_report_csv(out, report);
  return report.passed() ? 0 : kExitValidation;
}

void add_common(CLI::App* cmd, CommonArgs& a, const std::string& default_out) {
  a.out = default_out;
  cmd->add_option("--config", a.config, "scenario file (defaults to the reference SISO scenario)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", a.out, "CSV output path; the resolved configuration goes to <out>.resolved.ini")
      ->capture_default_str();
  cmd->add_option("--seed", a.seed, "master seed (overrides the config)");
  cmd->add_option("--trials", a.trials, "Monte Carlo trials per cell")->capture_default_str()->check(
      CLI::PositiveNumber);
  cmd->add_option("--threads", a.threads, "worker threads, 0 = runtime default")->capture_default_str();
  cmd->add_flag("--literal-window", a.literal_window, "simulate the full 5 km x 5 km area");
  cmd->add_option("--cluster-form", a.cluster_form, "cluster signal model")
      ->check(CLI::IsMember({"joint", "printed"}))
      ->capture_default_str();
  cmd->add_option("--macro-conditioning", a.macro_conditioning, "SBS constraint under macro association")
      ->check(CLI::IsMember({"exact", "surrogate"}))
      ->capture_default_str();
}

void add_sweep(CLI::App* cmd, SweepArgs& s) {
  cmd->add_option("--engines", s.engines, "analytic,mc")->delimiter(',')->capture_default_str();
  cmd->add_option("--strategies", s.strategies, "SISO,SUBF,SDMA")->delimiter(',')->capture_default_str();
  cmd->add_option("--modes", s.modes, "noncooperative,cooperative")->delimiter(',')->capture_default_str();
  cmd->add_option("--grid", s.grid, "grid values, strictly increasing")->delimiter(',');
  cmd->add_option("--threshold-db", s.threshold_db, "SINR threshold when it is not the swept variable")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverage and rate of two-tier multi-antenna networks with small-cell clusters"};
  app.require_subcommand(1);

  CommonArgs cov_a, rate_a, bias_a, dens_a, val_a;
  SweepArgs cov_s, rate_s, bias_s, dens_s;
  std::size_t association_trials = 100000;

  auto* cov = app.add_subcommand("coverage-sweep", "coverage versus SINR threshold (dB)");
  add_common(cov, cov_a, "coverage.csv");
  add_sweep(cov, cov_s);

  auto* rate = app.add_subcommand("rate-sweep", "mean achievable rate over a parameter grid");
  add_common(rate, rate_a, "rate.csv");
  add_sweep(rate, rate_s);
  rate->add_option("--variable", rate_s.variable, "threshold_db, bias_ratio, density_ratio or power_macro_dbm")
      ->default_str("density_ratio");

  auto* bias = app.add_subcommand("bias-sweep", "coverage versus the small/macro bias ratio");
  add_common(bias, bias_a, "bias.csv");
  add_sweep(bias, bias_s);

  auto* dens = app.add_subcommand("density-sweep", "coverage versus density ratio or macro power");
  add_common(dens, dens_a, "density.csv");
  add_sweep(dens, dens_s);
  dens->add_option("--variable", dens_s.variable, "density_ratio or power_macro_dbm")
      ->check(CLI::IsMember({"density_ratio", "power_macro_dbm"}))
      ->default_str("density_ratio");

  auto* val = app.add_subcommand("validate", "analytic versus Monte Carlo cross-checks");
  add_common(val, val_a, "validation.csv");
  val->add_option("--association-trials", association_trials, "trials for the association checks")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*cov) return run_sweep_command("coverage-sweep", Metric::coverage, SweepVariable::threshold_db, cov_a, cov_s);
    if (*rate) return run_sweep_command("rate-sweep", Metric::rate, SweepVariable::density_ratio, rate_a, rate_s);
    if (*bias) return run_sweep_command("bias-sweep", Metric::coverage, SweepVariable::bias_ratio, bias_a, bias_s);
    if (*dens) return run_sweep_command("density-sweep", Metric::coverage, SweepVariable::density_ratio, dens_a, dens_s);
    if (*val) return run_validate_command(val_a, association_trials);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
