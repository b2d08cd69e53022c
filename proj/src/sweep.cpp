// SPDX-License-Identifier: Apache-2.0
#include "hetnet/sweep.hpp"

#include <cmath>
#include <exception>
#include <map>
#include <ostream>
#include <utility>

#include <fmt/format.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hetnet/error.hpp"

namespace hetnet {

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::threshold_db: return "threshold_db";
    case SweepVariable::bias_ratio: return "bias_ratio";
    case SweepVariable::density_ratio: return "density_ratio";
    case SweepVariable::power_macro_dbm: return "power_macro_dbm";
  }
  return "?";
}

std::string_view to_string(Metric m) { return m == Metric::coverage ? "coverage" : "rate"; }

std::string_view to_string(Engine e) { return e == Engine::analytic ? "analytic" : "mc"; }

std::optional<SweepVariable> parse_sweep_variable(std::string_view text) {
  for (auto v : {SweepVariable::threshold_db, SweepVariable::bias_ratio, SweepVariable::density_ratio,
                 SweepVariable::power_macro_dbm}) {
    if (text == to_string(v)) return v;
  }
  return std::nullopt;
}

std::optional<Engine> parse_engine(std::string_view text) {
  if (text == "analytic") return Engine::analytic;
  if (text == "mc") return Engine::mc;
  return std::nullopt;
}

void SweepSpec::validate() const {
  if (grid.empty()) throw ValidationError("sweep grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw ValidationError("sweep grid values must be finite");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ValidationError("sweep grid must be strictly increasing");
  }
  if (strategies.empty()) throw ValidationError("no strategies selected");
  if (modes.empty()) throw ValidationError("no modes selected");
  if (engines.empty()) throw ValidationError("no engines selected");
  if (trials == 0) throw ValidationError("trial count must be positive");
  if ((variable == SweepVariable::bias_ratio || variable == SweepVariable::density_ratio) && !(grid.front() > 0.0)) {
    throw ValidationError("ratio grids must be positive");
  }
}

Scenario sweep_scenario(const Scenario& base, Strategy strategy, SweepVariable variable, double value) {
  Scenario sc = with_strategy(base, strategy);
  switch (variable) {
    case SweepVariable::threshold_db: break;
    case SweepVariable::bias_ratio:
      sc.macro.bias_override = 1.0;
      sc.small.bias_override = value;
      break;
    case SweepVariable::density_ratio: sc.small.density = value * sc.macro.density; break;
    case SweepVariable::power_macro_dbm: sc.macro.tx_power = dbm_to_watts(value); break;
  }
  sc.validate();
  return sc;
}

namespace {

double threshold_of(const SweepSpec& spec, double value) {
  const double db = spec.variable == SweepVariable::threshold_db ? value : spec.threshold_db;
  return std::pow(10.0, db / 10.0);
}

std::string describe(const std::exception& e) { return e.what(); }

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const Scenario& base) {
  spec.validate();
  base.validate();
  const std::size_t G = spec.grid.size();
  const std::size_t S = spec.strategies.size();
  const std::size_t M = spec.modes.size();
  const std::size_t E = spec.engines.size();
  std::vector<SweepRow> rows(G * S * M * E);
  std::vector<std::size_t> analytic_cells;
  std::vector<std::size_t> mc_cells;
  for (std::size_t g = 0; g < G; ++g) {
    for (std::size_t s = 0; s < S; ++s) {
      for (std::size_t m = 0; m < M; ++m) {
        for (std::size_t e = 0; e < E; ++e) {
          const std::size_t idx = ((g * S + s) * M + m) * E + e;
          SweepRow& row = rows[idx];
          row.variable = spec.variable;
          row.value = spec.grid[g];
          row.strategy = spec.strategies[s];
          row.mode = spec.modes[m];
          row.engine = spec.engines[e];
          row.metric = spec.metric;
          row.seed = spec.master_seed;
          (row.engine == Engine::analytic ? analytic_cells : mc_cells).push_back(idx);
        }
      }
    }
  }

  // Analytic cells are independent pure computations.
#ifdef _OPENMP
  const int workers = spec.threads > 0 ? spec.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(analytic_cells.size()); ++i) {
    SweepRow& row = rows[analytic_cells[static_cast<std::size_t>(i)]];
    try {
      const Scenario sc = sweep_scenario(base, row.strategy, row.variable, row.value);
      row.result = spec.metric == Metric::coverage
                       ? coverage_overall(row.mode, sc, threshold_of(spec, row.value), spec.analysis)
                       : mean_rate(row.mode, sc, spec.analysis);
    } catch (const std::exception& e) {
      row.result = std::nan("");
      row.error = describe(e);
    }
  }

  // Threshold sweeps reuse one set of trials per strategy and mode.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> sinr_cache;
  for (std::size_t idx : mc_cells) {
    SweepRow& row = rows[idx];
    try {
      const Scenario sc = sweep_scenario(base, row.strategy, row.variable, row.value);
      std::vector<double> fresh;
      const std::vector<double>* sinr = &fresh;
      const auto run = [&] {
        return sinrs_of(run_trials(sc, row.mode, spec.window_half_width ? Window{*spec.window_half_width} : Window::auto_sized(sc), spec.trials, spec.master_seed, spec.threads));
      };
      if (spec.variable == SweepVariable::threshold_db) {
        const auto key = std::make_pair(static_cast<std::size_t>(row.strategy), static_cast<std::size_t>(row.mode));
        auto it = sinr_cache.find(key);
        if (it == sinr_cache.end()) it = sinr_cache.emplace(key, run()).first;
        sinr = &it->second;
      } else {
        fresh = run();
      }
      const MetricResult r = spec.metric == Metric::coverage
                                 ? coverage_from_sinrs(*sinr, threshold_of(spec, row.value))
                                 : rate_from_sinrs(*sinr);
      row.result = r.value;
      row.ci_halfwidth = r.ci_halfwidth;
      row.trials = r.trials;
    } catch (const std::exception& e) {
      row.result = std::nan("");
      row.error = describe(e);
    }
  }
  return rows;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  return fmt::format("{:.8g}", v);
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  out += '"';
  return out;
}

void write_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    out << to_string(r.variable) << ',' << format_number(r.value) << ',' << to_string(r.strategy) << ','
        << to_string(r.mode) << ',' << to_string(r.engine) << ',' << to_string(r.metric) << ','
        << format_number(r.result) << ',' << format_number(r.ci_halfwidth) << ',' << r.trials << ',' << r.seed
        << ',' << csv_escape(r.error) << '\n';
  }
}

}  // namespace hetnet
