// SPDX-License-Identifier: Apache-2.0
//
// Cross-engine checks: analytic association, coverage and rate against the
// Monte Carlo engine for one scenario.
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hetnet/model.hpp"

namespace hetnet {

struct CheckResult {
  std::string name;
  double analytic = 0.0;
  double mc = 0.0;
  double tolerance = 0.0;
  bool informational = false;  // reported, never fails the run
  bool passed = false;
  std::string detail;

  double delta() const { return analytic - mc; }
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

struct ValidationHooks {
  /// Applied to the scenario seen by the analytic engine only.
  std::function<void(Scenario&)> corrupt_analytic;
};

struct ValidationSettings {
  std::size_t trials = 10000;
  std::size_t association_trials = 100000;
  std::uint64_t seed = 1;
  int threads = 0;
  std::optional<double> window_half_width;
  std::vector<double> thresholds_db{-5.0, 0.0, 5.0};
  double coverage_tolerance = 0.03;
  bool include_rate = true;
  bool include_alternatives = true;  // printed cluster form and D_m surrogate
};

ValidationReport run_validation(const Scenario& scenario, const ValidationSettings& settings,
                                const ValidationHooks& hooks = {});

/// Human-readable, one line per check.
void print_report(std::ostream& out, const ValidationReport& report);

/// check,analytic,mc,delta,tolerance,status
void write_report_csv(std::ostream& out, const ValidationReport& report);

}  // namespace hetnet
