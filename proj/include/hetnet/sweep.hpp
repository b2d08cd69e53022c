// SPDX-License-Identifier: Apache-2.0
//
// Parameter sweeps over both engines with a fixed CSV output schema.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hetnet/analysis.hpp"
#include "hetnet/mcsim.hpp"
#include "hetnet/model.hpp"

namespace hetnet {

enum class SweepVariable { threshold_db, bias_ratio, density_ratio, power_macro_dbm };
enum class Metric { coverage, rate };

std::string_view to_string(SweepVariable v);
std::string_view to_string(Metric m);
std::string_view to_string(Engine e);
std::optional<SweepVariable> parse_sweep_variable(std::string_view text);
std::optional<Engine> parse_engine(std::string_view text);

struct SweepSpec {
  SweepVariable variable = SweepVariable::threshold_db;
  std::vector<double> grid;
  std::vector<Strategy> strategies;
  std::vector<Mode> modes;
  std::vector<Engine> engines;
  Metric metric = Metric::coverage;
  double threshold_db = 0.0;  // for coverage when the threshold is not swept
  std::size_t trials = 10000;
  std::uint64_t master_seed = 1;
  int threads = 0;
  std::optional<double> window_half_width;  // metres; unset means auto-sized
  AnalysisOptions analysis;

  /// Nonempty, strictly increasing grid; nonempty strategy/mode/engine lists.
  void validate() const;
};

struct SweepRow {
  SweepVariable variable = SweepVariable::threshold_db;
  double value = 0.0;
  Strategy strategy = Strategy::siso;
  Mode mode = Mode::noncooperative;
  Engine engine = Engine::analytic;
  Metric metric = Metric::coverage;
  double result = 0.0;
  double ci_halfwidth = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string error;
};

/// The scenario a sweep cell evaluates: strategy antennas/users, then the
/// swept quantity (bias_ratio sets B_m = 1, B_s = value; density_ratio sets
/// lambda_s = value * lambda_m; power_macro_dbm sets p_m).
Scenario sweep_scenario(const Scenario& base, Strategy strategy, SweepVariable variable, double value);

/// One row per (grid value, strategy, mode, engine), in that nesting order.
/// A failing cell records its message in `error` and the sweep continues.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const Scenario& base);

inline constexpr std::string_view kCsvHeader =
    "sweep_variable,value,strategy,mode,engine,metric,result,ci_halfwidth,trials,seed,error";

/// Numbers use 8 significant digits so output is stable across runs.
std::string format_number(double v);
std::string csv_escape(std::string_view field);
void write_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace hetnet
