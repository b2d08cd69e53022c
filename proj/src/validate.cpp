// SPDX-License-Identifier: Apache-2.0
#include "hetnet/validate.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "hetnet/analysis.hpp"
#include "hetnet/association.hpp"
#include "hetnet/mcsim.hpp"
#include "hetnet/sweep.hpp"

namespace hetnet {

namespace {

constexpr double kZ95 = 1.959963984540054;

CheckResult make_check(std::string name, double analytic, double mc, double tolerance, bool informational = false) {
  CheckResult c;
  c.name = std::move(name);
  c.analytic = analytic;
  c.mc = mc;
  c.tolerance = tolerance;
  c.informational = informational;
  c.passed = std::isfinite(analytic) && std::abs(analytic - mc) <= tolerance;
  return c;
}

CheckResult failed_check(std::string name, const std::exception& e) {
  CheckResult c;
  c.name = std::move(name);
  c.analytic = std::nan("");
  c.detail = e.what();
  return c;
}

std::string status_of(const CheckResult& c) {
  if (c.informational) return "info";
  return c.passed ? "pass" : "FAIL";
}

}  // namespace

bool ValidationReport::passed() const {
  for (const auto& c : checks) {
    if (!c.informational && !c.passed) return false;
  }
  return true;
}

ValidationReport run_validation(const Scenario& scenario, const ValidationSettings& st, const ValidationHooks& hooks) {
  scenario.validate();
  Scenario analytic_sc = scenario;
  if (hooks.corrupt_analytic) hooks.corrupt_analytic(analytic_sc);

  ValidationReport report;
  for (Mode mode : {Mode::noncooperative, Mode::cooperative}) {
    const std::string tag(to_string(mode));
    const auto freq = empirical_association(scenario, mode, st.association_trials, st.seed, st.threads);
    const std::string name = "association/" + tag;
    try {
      const double a = mode == Mode::noncooperative ? assoc_prob_sbs_single(analytic_sc)
                                                    : assoc_prob_sbs_cluster(analytic_sc);
      const double se = std::sqrt(a * (1.0 - a) / static_cast<double>(st.association_trials));
      report.checks.push_back(make_check(name, a, freq.small_fraction.value, 3.0 * se));
    } catch (const std::exception& e) {
      report.checks.push_back(failed_check(name, e));
    }
  }

  for (Mode mode : {Mode::noncooperative, Mode::cooperative}) {
    const std::string tag(to_string(mode));
    const auto sinr = sinrs_of(run_trials(scenario, mode, st.window_half_width ? Window{*st.window_half_width} : Window::auto_sized(scenario), st.trials, st.seed, st.threads));
    for (double db : st.thresholds_db) {
      const double T = std::pow(10.0, db / 10.0);
      const MetricResult mc = coverage_from_sinrs(sinr, T);
      const std::string name = "coverage/" + tag + "/" + format_number(db) + "dB";
      try {
        report.checks.push_back(make_check(name, coverage_overall(mode, analytic_sc, T), mc.value, st.coverage_tolerance));
      } catch (const std::exception& e) {
        report.checks.push_back(failed_check(name, e));
      }
      if (st.include_alternatives && mode == Mode::cooperative && db == 0.0) {
        AnalysisOptions printed;
        printed.cluster_signal = ClusterSignalModel::common_fading;
        printed.macro_conditioning = MacroConditioning::surrogate;
        const std::string alt = "coverage/" + tag + "/" + format_number(db) + "dB/printed-cluster-form";
        try {
          report.checks.push_back(
              make_check(alt, coverage_overall(mode, analytic_sc, T, printed), mc.value, st.coverage_tolerance, true));
        } catch (const std::exception& e) {
          report.checks.push_back(failed_check(alt, e));
          report.checks.back().informational = true;
        }
      }
    }
    if (st.include_rate) {
      const MetricResult mc = rate_from_sinrs(sinr);
      const std::string name = "rate/" + tag;
      try {
        report.checks.push_back(make_check(name, mean_rate(mode, analytic_sc), mc.value, 3.0 * mc.ci_halfwidth / kZ95));
      } catch (const std::exception& e) {
        report.checks.push_back(failed_check(name, e));
      }
    }
  }
  return report;
}

void print_report(std::ostream& out, const ValidationReport& report) {
  for (const auto& c : report.checks) {
    out << fmt::format("{:<5} {:<52} analytic={:<10.6f} mc={:<10.6f} |delta|={:<10.6f} tol={:.6f}", status_of(c),
                       c.name, c.analytic, c.mc, std::abs(c.delta()), c.tolerance);
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << '\n';
  }
  out << (report.passed() ? "validation passed" : "validation FAILED") << '\n';
}

void write_report_csv(std::ostream& out, const ValidationReport& report) {
  out << "check,analytic,mc,delta,tolerance,status,error\n";
  for (const auto& c : report.checks) {
    out << csv_escape(c.name) << ',' << format_number(c.analytic) << ',' << format_number(c.mc) << ','
        << format_number(c.delta()) << ',' << format_number(c.tolerance) << ',' << status_of(c) << ','
        << csv_escape(c.detail) << '\n';
  }
}

}  // namespace hetnet
