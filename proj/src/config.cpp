// SPDX-License-Identifier: Apache-2.0
#include "hetnet/config.hpp"

#include <fmt/format.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>

#include "hetnet/error.hpp"

namespace hetnet {

namespace pt = boost::property_tree;

namespace {

template <class T>
T get_required(const pt::ptree& section, const std::string& section_name, const std::string& key) {
  auto value = section.get_optional<std::string>(key);
  if (!value) throw ConfigError(fmt::format("[{}] is missing required key '{}'", section_name, key));
  try {
    return section.get<T>(key);
  } catch (const pt::ptree_bad_data&) {
    throw ConfigError(fmt::format("[{}] {} = '{}' is not a valid value", section_name, key, *value));
  }
}

template <class T>
std::optional<T> get_optional(const pt::ptree& section, const std::string& section_name,
                              const std::string& key) {
  auto value = section.get_optional<std::string>(key);
  if (!value) return std::nullopt;
  try {
    return section.get<T>(key);
  } catch (const pt::ptree_bad_data&) {
    throw ConfigError(fmt::format("[{}] {} = '{}' is not a valid value", section_name, key, *value));
  }
}

void reject_unknown(const pt::ptree& section, const std::string& name,
                    const std::set<std::string>& known) {
  for (const auto& [key, _] : section) {
    if (!known.count(key)) throw ConfigError(fmt::format("[{}] has unknown key '{}'", name, key));
  }
}

TierParams read_tier(const pt::ptree& root, const std::string& name) {
  auto section = root.get_child_optional(name);
  if (!section) throw ConfigError(fmt::format("missing section [{}]", name));
  reject_unknown(*section, name,
                 {"density_per_m2", "power_dbm", "antennas", "users", "bias", "pathloss"});
  TierParams t;
  t.density = get_required<double>(*section, name, "density_per_m2");
  t.tx_power = dbm_to_watts(get_required<double>(*section, name, "power_dbm"));
  t.antennas = get_required<int>(*section, name, "antennas");
  t.users = get_required<int>(*section, name, "users");
  t.pathloss = get_required<double>(*section, name, "pathloss");
  t.bias_override = get_optional<double>(*section, name, "bias");
  return t;
}

std::string num(double v) { return fmt::format("{:.12g}", v); }

}  // namespace

Scenario parse_scenario(std::istream& in) {
  pt::ptree root;
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("cannot parse configuration: {}", e.message()));
  }
  for (const auto& [name, _] : root) {
    if (name != "macro" && name != "small" && name != "scenario" && name != "run") {
      throw ConfigError(fmt::format("unknown section [{}]", name));
    }
  }
  Scenario sc;
  sc.macro = read_tier(root, "macro");
  sc.small = read_tier(root, "small");

  auto section = root.get_child_optional("scenario");
  if (!section) throw ConfigError("missing section [scenario]");
  reject_unknown(*section, "scenario",
                 {"cluster_size", "noise_dbm", "seed", "tolerance", "cluster_samples",
                  "common_pathloss", "user_density_per_m2"});
  sc.cluster_size = get_required<int>(*section, "scenario", "cluster_size");
  sc.numerics.seed = get_required<std::uint64_t>(*section, "scenario", "seed");
  if (auto noise = section->get_optional<std::string>("noise_dbm"); noise && *noise != "off") {
    sc.noise = dbm_to_watts(get_required<double>(*section, "scenario", "noise_dbm"));
  }
  if (auto tol = get_optional<double>(*section, "scenario", "tolerance")) sc.numerics.tolerance = *tol;
  if (auto n = get_optional<std::size_t>(*section, "scenario", "cluster_samples")) {
    sc.numerics.cluster_samples = *n;
  }
  if (auto c = get_optional<bool>(*section, "scenario", "common_pathloss")) sc.common_pathloss = *c;
  sc.user_density = get_optional<double>(*section, "scenario", "user_density_per_m2");

  try {
    sc.validate();
  } catch (const ValidationError& e) {
    throw ConfigError(fmt::format("invalid scenario: {}", e.what()));
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open configuration file '{}'", path.string()));
  return parse_scenario(in);
}

void write_resolved_config(std::ostream& out, const Scenario& scenario,
                           const std::vector<std::pair<std::string, std::string>>& run_settings) {
  auto tier = [&](const char* name, const TierParams& t) {
    const DerivedTier d = derive_tier(t);
    out << '[' << name << "]\n";
    out << "density_per_m2 = " << num(t.density) << '\n';
    out << "power_dbm = " << num(watts_to_dbm(t.tx_power)) << '\n';
    out << "antennas = " << t.antennas << '\n';
    out << "users = " << t.users << '\n';
    if (t.bias_override) {
      out << "bias = " << num(*t.bias_override) << '\n';
    } else {
      out << "; bias = " << num(d.bias) << " (derived from antennas and users)\n";
    }
    out << "pathloss = " << num(t.pathloss) << "\n\n";
  };
  tier("macro", scenario.macro);
  tier("small", scenario.small);
  out << "[scenario]\n";
  out << "cluster_size = " << scenario.cluster_size << '\n';
  out << "noise_dbm = " << (scenario.noise > 0.0 ? num(watts_to_dbm(scenario.noise)) : "off") << '\n';
  out << "seed = " << scenario.numerics.seed << '\n';
  out << "tolerance = " << num(scenario.numerics.tolerance) << '\n';
  out << "cluster_samples = " << scenario.numerics.cluster_samples << '\n';
  out << "common_pathloss = " << (scenario.common_pathloss ? "true" : "false") << '\n';
  out << "user_density_per_m2 = " << num(scenario.user_density.value_or(40.0 * scenario.small.density)) << '\n';
  if (!run_settings.empty()) {
    out << "\n[run]\n";
    for (const auto& [k, v] : run_settings) out << k << " = " << v << '\n';
  }
}

}  // namespace hetnet
