// SPDX-License-Identifier: Apache-2.0
//
// Biased cell selection, MBS exclusion radii, association probabilities and
// serving-distance densities for the four association events.
#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "hetnet/model.hpp"

namespace hetnet {

/// A_m / A_s: noncooperative MBS / single SBS. D_m / D_s: cooperative MBS /
/// SBS cluster.
enum class Event { A_m, A_s, D_m, D_s };

std::string_view to_string(Event e);
Mode mode_of(Event e);
bool serves_small(Event e);

/// Distances of the K nearest SBSs, nondecreasing.
class OrderedDistances {
 public:
  OrderedDistances() = default;
  explicit OrderedDistances(std::vector<double> r);

  std::span<const double> values() const { return r_; }
  std::size_t size() const { return r_.size(); }
  double operator[](std::size_t i) const { return r_[i]; }
  double farthest() const { return r_.back(); }

 private:
  std::vector<double> r_;
};

/// Biased mean-power comparison. `sbs` must be sorted ascending; the
/// cooperative rule sums the first K entries, the noncooperative rule uses the
/// nearest only. Ties go to the macro tier.
Event select_tier(const Scenario& scenario, Mode mode, double mbs_distance, std::span<const double> sbs);

/// (p_hat delta_hat b_hat sum r_i^-alpha)^(-1/alpha): the cluster event
/// requires the nearest MBS to lie beyond this radius.
double exclusion_radius_mbs(const Scenario& scenario, std::span<const double> sbs);

/// Closed-form probability of attaching to the nearest SBS (noncooperative).
double assoc_prob_sbs_single(const Scenario& scenario);

/// Joint density of the K nearest SBS distances.
double ordered_distance_pdf(const Scenario& scenario, std::span<const double> r);

/// Probability that the K-SBS cluster wins the comparison. K <= 2 uses nested
/// quadrature, larger K samples the ordered distances.
double assoc_prob_sbs_cluster(const Scenario& scenario);

/// Probability, given the nearest MBS at distance r, that the K nearest SBSs
/// do not outbid it.
double macro_retention_prob(const Scenario& scenario, double r);

/// Probability of the event itself (1 - A or A for the matching mode).
double event_probability(Event event, const Scenario& scenario);

/// Serving-distance density for A_m, A_s or D_m at distance r. The overload
/// taking `event_prob` skips recomputing the normalizer.
double serving_distance_pdf(Event event, const Scenario& scenario, double r);
double serving_distance_pdf(Event event, const Scenario& scenario, double r, double event_prob);

/// Density of the cluster distances conditioned on D_s.
double serving_distance_pdf_cluster(const Scenario& scenario, std::span<const double> r);
double serving_distance_pdf_cluster(const Scenario& scenario, std::span<const double> r, double cluster_prob);

}  // namespace hetnet
