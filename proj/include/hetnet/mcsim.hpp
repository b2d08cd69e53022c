// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo engine: PPP base stations in a square window around the typical
// user, biased association, Gamma fading and SINR.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hetnet/association.hpp"
#include "hetnet/model.hpp"
#include "hetnet/rng.hpp"

namespace hetnet {

/// Square [-h, h]^2 centred on the user.
struct Window {
  double half_width = 0.0;

  double area() const { return 4.0 * half_width * half_width; }

  /// Smallest window with `target_small_points` expected SBSs and at least
  /// `min_per_tier` expected stations in each tier.
  static Window auto_sized(const Scenario& scenario, double target_small_points = 2000.0,
                           double min_per_tier = 200.0);

  /// Throws ValidationError when a tier falls below `min_per_tier` expected points.
  void validate(const Scenario& scenario, double min_per_tier = 200.0) const;
};

struct Station {
  double x = 0.0;
  double y = 0.0;
  double distance = 0.0;
};

/// Poisson(lambda * area) points, uniform over the window, in draw order.
std::vector<Station> generate_ppp(double density, const Window& window, Rng& rng);

/// Both tiers sorted by distance to the origin.
struct NetworkRealization {
  std::vector<Station> macro;
  std::vector<Station> small;
  int resamples = 0;  // draws rejected for an empty macro tier or fewer than K SBSs
};

NetworkRealization realize_network(const Scenario& scenario, const Window& window, Rng& rng);

/// Draws a Gamma(shape, 1) channel power.
using ChannelSampler = std::function<double(int shape, Rng& rng)>;

struct TrialOutcome {
  Event event = Event::A_m;
  double sinr = 0.0;
  std::vector<double> serving_distances;
  int resamples = 0;
};

/// Association, fading and SINR for one realization. Interference fading is
/// drawn for every station (macro first, then small, in distance order) before
/// the serving links, so both modes see the same interference field for a
/// given stream.
TrialOutcome evaluate_trial(const Scenario& scenario, Mode mode, const NetworkRealization& net, Rng& rng,
                            const ChannelSampler& channel = {});

TrialOutcome simulate_trial(const Scenario& scenario, Mode mode, const Window& window, Rng& rng);

/// Trial i always uses stream_rng(seed, i), so every schedule yields the
/// same outcomes in the same order.
std::vector<TrialOutcome> run_trials_serial(const Scenario& scenario, Mode mode, const Window& window,
                                            std::size_t trials, std::uint64_t seed);

/// OpenMP version of run_trials_serial; threads <= 0 uses the runtime default.
std::vector<TrialOutcome> run_trials(const Scenario& scenario, Mode mode, const Window& window,
                                     std::size_t trials, std::uint64_t seed, int threads = 0);

enum class Engine { analytic, mc };

struct MetricResult {
  double value = 0.0;
  double ci_halfwidth = 0.0;  // 95 %, zero for the analytic engine
  std::size_t trials = 0;
  Engine engine = Engine::mc;
};

/// Fraction of SINRs strictly above T with a binomial 95 % half-width.
MetricResult coverage_from_sinrs(std::span<const double> sinr, double threshold);

/// Mean of log2(1 + SINR) with a 95 % half-width from the sample variance.
MetricResult rate_from_sinrs(std::span<const double> sinr);

std::vector<double> sinrs_of(std::span<const TrialOutcome> outcomes);

MetricResult empirical_coverage(const Scenario& scenario, Mode mode, double threshold, std::size_t trials,
                                std::uint64_t master_seed, int threads = 0);

MetricResult empirical_rate(const Scenario& scenario, Mode mode, std::size_t trials, std::uint64_t master_seed,
                            int threads = 0);

struct AssociationFrequencies {
  std::size_t macro = 0;
  std::size_t small = 0;
  MetricResult small_fraction;
};

/// Association events only: no fading, nearest-distance bookkeeping only,
/// window sized for `min_per_tier` expected points per tier.
AssociationFrequencies empirical_association(const Scenario& scenario, Mode mode, std::size_t trials,
                                             std::uint64_t master_seed, int threads = 0);

}  // namespace hetnet
