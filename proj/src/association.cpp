// SPDX-License-Identifier: Apache-2.0
#include "hetnet/association.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hetnet/error.hpp"
#include "hetnet/quadrature.hpp"
#include "hetnet/rng.hpp"

namespace hetnet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAssocTolerance = 1e-9;
constexpr std::uint64_t kClusterStream = 0xA550C1A7E5ULL;

// In normalized coordinates v_i = lambda_s pi r_i^2 the K nearest SBSs have
// joint density exp(-v_K) on 0 < v_1 < ... < v_K.
struct ClusterGeometry {
  double alpha;
  double kappa;  // (1/lambda_hat) (p_hat delta_hat b_hat)^(-2/alpha)

  explicit ClusterGeometry(const Scenario& sc) {
    const HatRatios h = hat_ratios(sc);
    alpha = sc.pathloss();
    kappa = std::pow(h.association_weight(), -2.0 / alpha) / h.density;
  }

  // Probability of no MBS inside the exclusion disc of the cluster at v.
  double null_prob(std::span<const double> v) const {
    double sum = 0.0;
    for (double vi : v) sum += std::pow(vi, -alpha / 2.0);
    return std::exp(-kappa * std::pow(sum, -2.0 / alpha));
  }
};

void check_cluster(const Scenario& sc) {
  sc.validate();
  if (sc.cluster_size < 1) throw ValidationError("cluster size must be at least 1");
}

// Ordered normalized distances of the K nearest points of a unit PPP.
template <class F>
double sample_cluster_average(const Scenario& sc, F&& f) {
  Rng rng = stream_rng(sc.numerics.seed, kClusterStream);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> v(static_cast<std::size_t>(sc.cluster_size));
  double sum = 0.0;
  for (std::size_t n = 0; n < sc.numerics.cluster_samples; ++n) {
    double acc = 0.0;
    for (double& vi : v) vi = (acc += expo(rng));
    sum += f(std::span<const double>(v));
  }
  return sum / static_cast<double>(sc.numerics.cluster_samples);
}

}  // namespace

std::string_view to_string(Event e) {
  switch (e) {
    case Event::A_m: return "A_m";
    case Event::A_s: return "A_s";
    case Event::D_m: return "D_m";
    case Event::D_s: return "D_s";
  }
  return "?";
}

Mode mode_of(Event e) {
  return (e == Event::A_m || e == Event::A_s) ? Mode::noncooperative : Mode::cooperative;
}

bool serves_small(Event e) { return e == Event::A_s || e == Event::D_s; }

OrderedDistances::OrderedDistances(std::vector<double> r) : r_(std::move(r)) {
  if (r_.empty()) throw ValidationError("ordered distances must not be empty");
  for (std::size_t i = 0; i < r_.size(); ++i) {
    if (!(r_[i] > 0.0) || !std::isfinite(r_[i])) throw ValidationError("distances must be positive and finite");
    if (i > 0 && r_[i] < r_[i - 1]) throw ValidationError("distances must be sorted ascending");
  }
}

Event select_tier(const Scenario& sc, Mode mode, double mbs_distance, std::span<const double> sbs) {
  const DerivedTier m = derive_tier(sc.macro);
  const DerivedTier s = derive_tier(sc.small);
  const double macro_power = m.bias * m.delta * sc.macro.tx_power * std::pow(mbs_distance, -sc.macro.pathloss);
  const std::size_t members =
      mode == Mode::cooperative ? std::min<std::size_t>(sbs.size(), static_cast<std::size_t>(sc.cluster_size)) : 1;
  if (sbs.empty()) return mode == Mode::cooperative ? Event::D_m : Event::A_m;
  double sum = 0.0;
  for (std::size_t i = 0; i < members; ++i) sum += std::pow(sbs[i], -sc.small.pathloss);
  const double small_power = s.bias * s.delta * sc.small.tx_power * sum;
  if (mode == Mode::cooperative) return small_power > macro_power ? Event::D_s : Event::D_m;
  return small_power > macro_power ? Event::A_s : Event::A_m;
}

double exclusion_radius_mbs(const Scenario& sc, std::span<const double> sbs) {
  const HatRatios h = hat_ratios(sc);
  const double alpha = sc.pathloss();
  double sum = 0.0;
  for (double r : sbs) sum += std::pow(r, -alpha);
  return std::pow(h.association_weight() * sum, -1.0 / alpha);
}

double assoc_prob_sbs_single(const Scenario& sc) {
  const HatRatios h = hat_ratios(sc);
  const double alpha = sc.pathloss();
  return 1.0 / (1.0 + std::pow(h.association_weight(), -2.0 / alpha) / h.density);
}

double ordered_distance_pdf(const Scenario& sc, std::span<const double> r) {
  if (r.empty()) throw ValidationError("ordered distances must not be empty");
  const double lambda = sc.small.density;
  double prod = 1.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || (i > 0 && r[i] < r[i - 1])) return 0.0;
    prod *= 2.0 * kPi * lambda * r[i];
  }
  return prod * std::exp(-lambda * kPi * r.back() * r.back());
}

double assoc_prob_sbs_cluster(const Scenario& sc) {
  check_cluster(sc);
  const ClusterGeometry geo(sc);
  switch (sc.cluster_size) {
    case 1:
      return integrate(
          [&](double v) {
            const double vv[1] = {v};
            return std::exp(-v) * geo.null_prob(vv);
          },
          0.0, std::numeric_limits<double>::infinity(), kAssocTolerance, "cluster association (K=1)");
    case 2:
      return integrate(
          [&](double v2) {
            if (v2 <= 0.0) return 0.0;
            const double inner = integrate(
                [&](double v1) {
                  const double vv[2] = {v1, v2};
                  return geo.null_prob(vv);
                },
                0.0, v2, kAssocTolerance, "cluster association (inner)");
            return std::exp(-v2) * inner;
          },
          0.0, std::numeric_limits<double>::infinity(), kAssocTolerance, "cluster association (K=2)");
    default:
      return sample_cluster_average(sc, [&](std::span<const double> v) { return geo.null_prob(v); });
  }
}

double macro_retention_prob(const Scenario& sc, double r) {
  check_cluster(sc);
  const HatRatios h = hat_ratios(sc);
  const double alpha = sc.pathloss();
  // Cluster loses iff sum_i v_i^(-alpha/2) <= cv.
  const double cv =
      std::pow(r, -alpha) * std::pow(kPi * sc.small.density, -alpha / 2.0) / h.association_weight();
  const double ex = -2.0 / alpha;
  switch (sc.cluster_size) {
    case 1:
      return std::exp(-std::pow(cv, ex));
    case 2: {
      const double v2min = std::pow(cv / 2.0, ex);
      if (v2min > 745.0) return 0.0;
      return integrate(
          [&](double xi) {
            const double v2 = v2min * std::exp(xi);
            const double rest = cv - std::pow(v2, -alpha / 2.0);
            if (rest <= 0.0) return 0.0;
            const double lower = std::pow(rest, ex);
            return v2 * std::exp(-v2) * std::max(0.0, v2 - lower);
          },
          0.0, std::log((v2min + 750.0) / v2min), kAssocTolerance, "macro retention", 1e-12);
    }
    default:
      return sample_cluster_average(sc, [&](std::span<const double> v) {
        double sum = 0.0;
        for (double vi : v) sum += std::pow(vi, -alpha / 2.0);
        return sum <= cv ? 1.0 : 0.0;
      });
  }
}

double event_probability(Event event, const Scenario& sc) {
  switch (event) {
    case Event::A_m: return 1.0 - assoc_prob_sbs_single(sc);
    case Event::A_s: return assoc_prob_sbs_single(sc);
    case Event::D_m: return 1.0 - assoc_prob_sbs_cluster(sc);
    case Event::D_s: return assoc_prob_sbs_cluster(sc);
  }
  return 0.0;
}

double serving_distance_pdf(Event event, const Scenario& sc, double r, double event_prob) {
  if (!(r > 0.0)) return 0.0;
  const HatRatios h = hat_ratios(sc);
  const double alpha = sc.pathloss();
  const double lm = sc.macro.density;
  const double ls = sc.small.density;
  const double c = h.association_weight();
  switch (event) {
    case Event::A_m:
      return 2.0 * kPi * lm * r * std::exp(-kPi * r * r * (lm + ls * std::pow(c, 2.0 / alpha))) / event_prob;
    case Event::A_s:
      return 2.0 * kPi * ls * r * std::exp(-kPi * r * r * (ls + lm * std::pow(c, -2.0 / alpha))) / event_prob;
    case Event::D_m:
      return 2.0 * kPi * lm * r * std::exp(-kPi * lm * r * r) * macro_retention_prob(sc, r) / event_prob;
    case Event::D_s:
      throw ValidationError("D_s serving distances are a vector; use serving_distance_pdf_cluster");
  }
  return 0.0;
}

double serving_distance_pdf(Event event, const Scenario& sc, double r) {
  return serving_distance_pdf(event, sc, r, event_probability(event, sc));
}

double serving_distance_pdf_cluster(const Scenario& sc, std::span<const double> r, double cluster_prob) {
  const double f = ordered_distance_pdf(sc, r);
  if (f == 0.0) return 0.0;
  const double eta_root = exclusion_radius_mbs(sc, r);
  return std::exp(-kPi * sc.macro.density * eta_root * eta_root) * f / cluster_prob;
}

double serving_distance_pdf_cluster(const Scenario& sc, std::span<const double> r) {
  return serving_distance_pdf_cluster(sc, r, assoc_prob_sbs_cluster(sc));
}

}  // namespace hetnet
