// SPDX-License-Identifier: Apache-2.0
#include "hetnet/model.hpp"

#include <cctype>
#include <cmath>
#include <string>
#include <utility>

#include "hetnet/error.hpp"

namespace hetnet {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace

void validate(const TierParams& tier) {
  require(std::isfinite(tier.density) && tier.density > 0.0, "tier density must be positive");
  require(std::isfinite(tier.tx_power) && tier.tx_power > 0.0, "tier power must be positive");
  require(tier.users >= 1, "tier must serve at least one user");
  require(tier.antennas >= tier.users, "antennas must be at least the number of served users");
  require(std::isfinite(tier.pathloss) && tier.pathloss > 2.0, "path-loss exponent must exceed 2");
  if (tier.bias_override) {
    require(std::isfinite(*tier.bias_override) && *tier.bias_override > 0.0,
            "bias override must be positive");
  }
}

DerivedTier derive_tier(const TierParams& tier) {
  validate(tier);
  DerivedTier d;
  d.delta = tier.antennas - tier.users + 1;
  d.bias = tier.bias_override ? *tier.bias_override
                              : std::sqrt(static_cast<double>(tier.users) / d.delta);
  return d;
}

void Scenario::validate() const {
  hetnet::validate(macro);
  hetnet::validate(small);
  require(cluster_size >= 1, "cluster size must be at least 1");
  require(std::isfinite(noise) && noise >= 0.0, "noise power must be non-negative");
  if (common_pathloss) {
    require(macro.pathloss == small.pathloss,
            "common path loss requested but tiers have different exponents");
  }
  require(numerics.tolerance > 0.0 && numerics.tolerance < 0.1,
          "numeric tolerance must lie in (0, 0.1)");
  if (user_density) require(std::isfinite(*user_density) && *user_density > 0.0, "user density must be positive");
  require(numerics.cluster_samples >= 1000, "cluster sampling needs at least 1000 samples");
}

double Scenario::pathloss() const {
  if (macro.pathloss != small.pathloss) {
    throw ValidationError("analytic engine requires a path-loss exponent common to both tiers");
  }
  return macro.pathloss;
}

HatRatios hat_ratios(const Scenario& scenario) {
  scenario.validate();
  const DerivedTier m = derive_tier(scenario.macro);
  const DerivedTier s = derive_tier(scenario.small);
  HatRatios h;
  h.power = scenario.small.tx_power / scenario.macro.tx_power;
  h.delta = static_cast<double>(s.delta) / m.delta;
  h.bias = s.bias / m.bias;
  h.density = scenario.small.density / scenario.macro.density;
  h.beta = 1.0 / (h.power * h.delta * h.bias);
  return h;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

Scenario with_strategy(Scenario scenario, Strategy strategy) {
  switch (strategy) {
    case Strategy::siso:
      scenario.macro.antennas = scenario.macro.users = 1;
      scenario.small.antennas = scenario.small.users = 1;
      break;
    case Strategy::subf:
      scenario.macro.antennas = 8;
      scenario.macro.users = 1;
      scenario.small.antennas = 4;
      scenario.small.users = 1;
      break;
    case Strategy::sdma:
      scenario.macro.antennas = scenario.macro.users = 8;
      scenario.small.antennas = scenario.small.users = 8;
      break;
  }
  return scenario;
}

Scenario reference_scenario(Strategy strategy) {
  Scenario sc;
  sc.macro.density = 0.01;
  sc.small.density = 0.04;
  sc.macro.tx_power = dbm_to_watts(45.0);
  sc.small.tx_power = dbm_to_watts(35.0);
  sc.macro.pathloss = sc.small.pathloss = 3.0;
  sc.cluster_size = 2;
  sc.noise = 0.0;
  return with_strategy(sc, strategy);
}

Scenario swap_tiers(const Scenario& scenario) {
  Scenario out = scenario;
  std::swap(out.macro, out.small);
  return out;
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::siso: return "SISO";
    case Strategy::subf: return "SUBF";
    case Strategy::sdma: return "SDMA";
  }
  return "?";
}

std::string_view to_string(Mode m) {
  return m == Mode::noncooperative ? "noncooperative" : "cooperative";
}

std::optional<Strategy> parse_strategy(std::string_view text) {
  std::string t(text);
  for (auto& c : t) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (t == "SISO") return Strategy::siso;
  if (t == "SUBF") return Strategy::subf;
  if (t == "SDMA") return Strategy::sdma;
  return std::nullopt;
}

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "noncooperative" || text == "noncoop") return Mode::noncooperative;
  if (text == "cooperative" || text == "coop") return Mode::cooperative;
  return std::nullopt;
}

}  // namespace hetnet
