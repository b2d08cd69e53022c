// SPDX-License-Identifier: Apache-2.0
//
// INI-style scenario files:
//
//   [macro]                       [small]
//   density_per_m2 = 0.01         density_per_m2 = 0.04
//   power_dbm = 45                power_dbm = 35
//   antennas = 1                  antennas = 1
//   users = 1                     users = 1
//   pathloss = 3                  pathloss = 3
//   bias = 1.0        ; optional
//
//   [scenario]
//   cluster_size = 2
//   noise_dbm = off   ; optional, "off" = interference-limited
//   seed = 1
//   user_density_per_m2 = 1.6   ; optional, recorded only
//
// [scenario] also accepts tolerance, cluster_samples and common_pathloss.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hetnet/model.hpp"

namespace hetnet {

Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::filesystem::path& path);

/// Writes every setting, defaults included, so the file reproduces the run.
/// `run_settings` become a trailing [run] section.
void write_resolved_config(std::ostream& out, const Scenario& scenario,
                           const std::vector<std::pair<std::string, std::string>>& run_settings = {});

}  // namespace hetnet
