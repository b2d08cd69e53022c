// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hetnet/config.hpp"
#include "hetnet/error.hpp"
#include "hetnet/sweep.hpp"
#include "hetnet/validate.hpp"

using namespace hetnet;
namespace fs = std::filesystem;

namespace {

std::string csv_of(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "hetnet_cli_test";
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HETNET_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("sweep") {
  TEST_CASE("threshold sweep shape and monotonicity") {
    SweepSpec spec;
    spec.variable = SweepVariable::threshold_db;
    spec.grid = {-10, -5, 0, 5, 10, 15, 20};
    spec.strategies = {Strategy::siso};
    spec.modes = {Mode::noncooperative, Mode::cooperative};
    spec.engines = {Engine::analytic, Engine::mc};
    spec.trials = 2000;
    const auto rows = run_sweep(spec, reference_scenario());
    REQUIRE(rows.size() == 7 * 2 * 2);
    for (const auto& r : rows) CHECK(r.error.empty());
    for (std::size_t cell = 0; cell < 4; ++cell) {
      for (std::size_t g = 1; g < 7; ++g) {
        const auto& prev = rows[(g - 1) * 4 + cell];
        const auto& cur = rows[g * 4 + cell];
        CHECK(cur.mode == prev.mode);
        CHECK(cur.engine == prev.engine);
        CHECK(cur.result <= prev.result);
      }
    }
    CHECK(rows[1].engine == Engine::mc);
    CHECK(rows[1].trials == 2000);
    CHECK(rows[1].ci_halfwidth > 0.0);
    CHECK(rows[0].trials == 0);
  }

  TEST_CASE("analytic-only sweeps run no trials") {
    SweepSpec spec;
    spec.variable = SweepVariable::bias_ratio;
    spec.grid = {0.1, 1.0, 10.0};
    spec.strategies = {Strategy::siso, Strategy::subf};
    spec.modes = {Mode::noncooperative};
    spec.engines = {Engine::analytic};
    const auto rows = run_sweep(spec, reference_scenario());
    REQUIRE(rows.size() == 6);
    for (const auto& r : rows) {
      CHECK(r.engine == Engine::analytic);
      CHECK(r.trials == 0);
      CHECK(r.ci_halfwidth == 0.0);
    }
  }

  TEST_CASE("sweep scenarios") {
    const Scenario base = reference_scenario();
    const Scenario b = sweep_scenario(base, Strategy::subf, SweepVariable::bias_ratio, 4.0);
    CHECK(b.macro.antennas == 8);
    CHECK(*b.macro.bias_override == 1.0);
    CHECK(*b.small.bias_override == 4.0);
    const Scenario d = sweep_scenario(base, Strategy::siso, SweepVariable::density_ratio, 16.0);
    CHECK(d.small.density == doctest::Approx(16.0 * base.macro.density));
    const Scenario p = sweep_scenario(base, Strategy::siso, SweepVariable::power_macro_dbm, 40.0);
    CHECK(p.macro.tx_power == doctest::Approx(dbm_to_watts(40.0)));
  }

  TEST_CASE("invalid specs fail before any computation") {
    SweepSpec spec;
    spec.grid = {0.0};
    spec.modes = {Mode::noncooperative};
    spec.engines = {Engine::analytic};
    CHECK_THROWS_AS(run_sweep(spec, reference_scenario()), ValidationError);
    spec.strategies = {Strategy::siso};
    spec.grid = {1.0, 1.0};
    CHECK_THROWS_AS(run_sweep(spec, reference_scenario()), ValidationError);
    spec.grid = {};
    CHECK_THROWS_AS(run_sweep(spec, reference_scenario()), ValidationError);
  }

  TEST_CASE("failing cells are reported, not fatal") {
    Scenario base = reference_scenario();
    base.small.pathloss = 3.5;
    base.common_pathloss = false;
    SweepSpec spec;
    spec.variable = SweepVariable::threshold_db;
    spec.grid = {0.0};
    spec.strategies = {Strategy::siso};
    spec.modes = {Mode::noncooperative};
    spec.engines = {Engine::analytic, Engine::mc};
    spec.trials = 500;
    const auto rows = run_sweep(spec, base);
    REQUIRE(rows.size() == 2);
    CHECK_FALSE(rows[0].error.empty());
    CHECK(std::isnan(rows[0].result));
    CHECK(rows[1].error.empty());
    CHECK(rows[1].result > 0.0);
    const std::string csv = csv_of(rows);
    CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  }

  TEST_CASE("ratio grids must be positive") {
    SweepSpec spec;
    spec.variable = SweepVariable::density_ratio;
    spec.grid = {-1.0, 2.0};
    spec.strategies = {Strategy::siso};
    spec.modes = {Mode::noncooperative};
    spec.engines = {Engine::analytic};
    CHECK_THROWS_AS(run_sweep(spec, reference_scenario()), ValidationError);
  }

  TEST_CASE("CSV is deterministic across runs and thread counts") {
    SweepSpec spec;
    spec.variable = SweepVariable::threshold_db;
    spec.grid = {-5, 0, 5};
    spec.strategies = {Strategy::siso, Strategy::sdma};
    spec.modes = {Mode::noncooperative};
    spec.engines = {Engine::analytic, Engine::mc};
    spec.trials = 1500;
    spec.threads = 1;
    const std::string a = csv_of(run_sweep(spec, reference_scenario()));
    spec.threads = 4;
    const std::string b = csv_of(run_sweep(spec, reference_scenario()));
    CHECK(a == b);
  }

  TEST_CASE("CSV escaping and number format") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(std::nan("")).empty());
  }
}

TEST_SUITE("validate") {
  ValidationSettings quick() {
    ValidationSettings st;
    st.trials = 3000;
    st.association_trials = 30000;
    st.thresholds_db = {0.0};
    st.include_rate = false;
    st.include_alternatives = false;
    return st;
  }

  TEST_CASE("symmetric tiers associate half the time") {
    Scenario sc = reference_scenario();
    sc.small = sc.macro;
    sc.cluster_size = 1;
    ValidationSettings st = quick();
    st.thresholds_db = {};
    const auto report = run_validation(sc, st);
    REQUIRE(report.checks.size() == 2);
    CHECK(report.checks[0].name == "association/noncooperative");
    CHECK(report.checks[0].analytic == doctest::Approx(0.5));
    CHECK(report.checks[0].passed);
    CHECK(report.passed());
  }

  TEST_CASE("a corrupted analytic model is caught") {
    const Scenario sc = reference_scenario();
    ValidationHooks hooks;
    hooks.corrupt_analytic = [](Scenario& s) { s.macro.antennas = 8; };
    const auto report = run_validation(sc, quick(), hooks);
    bool coverage_failed = false;
    for (const auto& c : report.checks) {
      if (c.name.rfind("coverage/", 0) == 0 && !c.passed) coverage_failed = true;
    }
    CHECK(coverage_failed);
    CHECK_FALSE(report.passed());

    std::ostringstream text, csv;
    print_report(text, report);
    write_report_csv(csv, report);
    CHECK(text.str().find("FAIL") != std::string::npos);
    CHECK(csv.str().rfind("check,analytic,mc,delta,tolerance,status,error\n", 0) == 0);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("sweep output is reproducible and echoes its configuration") {
    const fs::path dir = scratch_dir();
    const std::string args = "coverage-sweep --strategies SISO --modes noncooperative --engines analytic,mc "
                             "--trials 500 --grid -5,0,5 --seed 3 --out ";
    REQUIRE(run_cli(args + (dir / "a.csv").string()) == 0);
    REQUIRE(run_cli(args + (dir / "b.csv").string() + " --threads 4") == 0);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    CHECK(slurp(dir / "a.csv").rfind(std::string(kCsvHeader), 0) == 0);

    const fs::path sidecar = dir / "a.csv.resolved.ini";
    REQUIRE(fs::exists(sidecar));
    const Scenario back = load_scenario(sidecar);
    CHECK(back.numerics.seed == 3);
    CHECK(slurp(sidecar).find("grid = -5,0,5") != std::string::npos);

    REQUIRE(run_cli("coverage-sweep --strategies SISO --modes noncooperative --engines analytic,mc --trials 500 "
                    "--grid -5,0,5 --config " + sidecar.string() + " --out " + (dir / "c.csv").string()) == 0);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "c.csv"));
  }

  TEST_CASE("exit codes") {
    const fs::path dir = scratch_dir();
    CHECK(run_cli("") == 2);
    CHECK(run_cli("coverage-sweep --strategies MIMO --out " + (dir / "x.csv").string()) == 2);
    CHECK(run_cli("coverage-sweep --grid 5,0 --out " + (dir / "x.csv").string()) == 2);
    CHECK(run_cli("density-sweep --variable threshold_db --out " + (dir / "x.csv").string()) == 2);
    CHECK(run_cli("validate --config /nonexistent.ini") == 2);
    std::ofstream(dir / "bad.ini") << "[macro]\ndensity_per_m2 = -1\n";
    CHECK(run_cli("rate-sweep --config " + (dir / "bad.ini").string() + " --out " + (dir / "x.csv").string()) == 2);
  }
}
