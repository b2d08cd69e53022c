// SPDX-License-Identifier: Apache-2.0
//
// Domain types for a two-tier (macro + small cell) multi-antenna downlink.
// Powers are stored in watts everywhere; dBm only appears at the config
// boundary.
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace hetnet {

enum class Tier { macro, small };

/// Noncooperative: the user attaches to the nearest MBS or the nearest SBS.
/// Cooperative: the K nearest SBSs form a jointly transmitting cluster.
enum class Mode { noncooperative, cooperative };

enum class Strategy { siso, subf, sdma };

struct TierParams {
  double density = 0.0;   // base stations per m^2
  double tx_power = 0.0;  // watts per served user
  int antennas = 1;
  int users = 1;          // users served per resource block
  double pathloss = 3.0;
  std::optional<double> bias_override;
};

/// Gamma shape of the direct link under zero-forcing, and the association bias.
struct DerivedTier {
  int delta = 1;
  double bias = 1.0;
};

void validate(const TierParams& tier);

/// delta = M - Psi + 1; bias = sqrt(Psi / delta) unless overridden.
DerivedTier derive_tier(const TierParams& tier);

struct NumericSettings {
  double tolerance = 1e-5;               // absolute, on probabilities
  std::size_t cluster_samples = 100000;  // cluster integrals when K > 2
  std::uint64_t seed = 1;
};

struct Scenario {
  TierParams macro;
  TierParams small;
  int cluster_size = 2;
  double noise = 0.0;  // watts; 0 means interference-limited
  bool common_pathloss = true;
  std::optional<double> user_density;  // per m^2; recorded only, no formula depends on it
  NumericSettings numerics;

  void validate() const;
  const TierParams& tier(Tier t) const { return t == Tier::macro ? macro : small; }
  TierParams& tier(Tier t) { return t == Tier::macro ? macro : small; }
  /// Path-loss exponent shared by both tiers; throws if they differ.
  double pathloss() const;
};

/// Small-over-macro ratios used throughout the association analysis.
struct HatRatios {
  double power = 1.0;
  double delta = 1.0;
  double bias = 1.0;
  double density = 1.0;
  double beta = 1.0;  // 1 / (power * delta * bias)

  /// p_hat * delta_hat * b_hat, the small tier's biased-power weight.
  double association_weight() const { return power * delta * bias; }
};

HatRatios hat_ratios(const Scenario& scenario);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Antenna/user configuration for both tiers: SISO (1/1), SU-BF (8/1 macro,
/// 4/1 small) or SDMA (8/8). Bias overrides are left untouched.
Scenario with_strategy(Scenario scenario, Strategy strategy);

/// lambda_m = 0.01, lambda_s = 0.04 per m^2, 45/35 dBm, alpha = 3, K = 2, N = 0.
Scenario reference_scenario(Strategy strategy = Strategy::siso);

/// Exchanges the roles of the two tiers.
Scenario swap_tiers(const Scenario& scenario);

std::string_view to_string(Strategy s);
std::string_view to_string(Mode m);
std::optional<Strategy> parse_strategy(std::string_view text);
std::optional<Mode> parse_mode(std::string_view text);

}  // namespace hetnet
