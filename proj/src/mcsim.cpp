// SPDX-License-Identifier: Apache-2.0
#include "hetnet/mcsim.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hetnet/error.hpp"
#include "hetnet/specfun.hpp"

namespace hetnet {

namespace {

constexpr double kZ95 = 1.959963984540054;

double gamma_draw(const ChannelSampler& channel, int shape, Rng& rng) {
  return channel ? channel(shape, rng) : sample_gamma(shape, rng);
}

template <class Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
  std::exception_ptr failure;
  std::mutex guard;
#ifdef _OPENMP
  const int workers = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(workers)
#else
  (void)threads;
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      const std::lock_guard<std::mutex> lock(guard);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

TrialOutcome trial_at(const Scenario& sc, Mode mode, const Window& window, std::uint64_t seed, std::size_t i) {
  Rng rng = stream_rng(seed, i);
  return simulate_trial(sc, mode, window, rng);
}

}  // namespace

Window Window::auto_sized(const Scenario& sc, double target_small_points, double min_per_tier) {
  const double need = std::max({target_small_points / sc.small.density, min_per_tier / sc.small.density,
                                min_per_tier / sc.macro.density});
  return Window{0.5 * std::sqrt(need)};
}

void Window::validate(const Scenario& sc, double min_per_tier) const {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw ValidationError("window half-width must be positive");
  if (sc.macro.density * area() < min_per_tier || sc.small.density * area() < min_per_tier) {
    throw ValidationError("window too small: fewer than the minimum expected stations in a tier");
  }
}

std::vector<Station> generate_ppp(double density, const Window& window, Rng& rng) {
  if (!(density >= 0.0)) throw ValidationError("density must be non-negative");
  std::vector<Station> pts;
  if (density == 0.0) return pts;
  std::poisson_distribution<long long> count(density * window.area());
  const auto n = static_cast<std::size_t>(count(rng));
  pts.reserve(n);
  std::uniform_real_distribution<double> coord(-window.half_width, window.half_width);
  while (pts.size() < n) {
    const double x = coord(rng);
    const double y = coord(rng);
    const double d = std::hypot(x, y);
    if (d > 0.0) pts.push_back({x, y, d});
  }
  return pts;
}

NetworkRealization realize_network(const Scenario& sc, const Window& window, Rng& rng) {
  NetworkRealization net;
  const auto need_small = static_cast<std::size_t>(std::max(1, sc.cluster_size));
  for (;;) {
    net.macro = generate_ppp(sc.macro.density, window, rng);
    net.small = generate_ppp(sc.small.density, window, rng);
    if (!net.macro.empty() && net.small.size() >= need_small) break;
    ++net.resamples;
    if (net.resamples > 1000) throw ValidationError("window repeatedly produced empty tiers");
  }
  const auto by_distance = [](const Station& a, const Station& b) { return a.distance < b.distance; };
  std::sort(net.macro.begin(), net.macro.end(), by_distance);
  std::sort(net.small.begin(), net.small.end(), by_distance);
  return net;
}

TrialOutcome evaluate_trial(const Scenario& sc, Mode mode, const NetworkRealization& net, Rng& rng,
                            const ChannelSampler& channel) {
  if (net.macro.empty() || net.small.empty()) throw ValidationError("realization has an empty tier");
  const DerivedTier dm = derive_tier(sc.macro);
  const DerivedTier ds = derive_tier(sc.small);
  const double am = sc.macro.pathloss;
  const double as = sc.small.pathloss;

  std::vector<double> gm(net.macro.size());
  std::vector<double> gs(net.small.size());
  for (double& g : gm) g = gamma_draw(channel, sc.macro.users, rng);
  for (double& g : gs) g = gamma_draw(channel, sc.small.users, rng);

  const std::size_t k = std::min<std::size_t>(net.small.size(), static_cast<std::size_t>(sc.cluster_size));
  std::vector<double> nearest(k);
  for (std::size_t i = 0; i < k; ++i) nearest[i] = net.small[i].distance;

  TrialOutcome out;
  out.resamples = net.resamples;
  out.event = select_tier(sc, mode, net.macro[0].distance, nearest);

  std::size_t macro_serving = 0;
  std::size_t small_serving = 0;
  double signal = 0.0;
  switch (out.event) {
    case Event::A_m:
    case Event::D_m:
      macro_serving = 1;
      signal = sc.macro.tx_power * gamma_draw(channel, dm.delta, rng) * std::pow(net.macro[0].distance, -am);
      out.serving_distances = {net.macro[0].distance};
      break;
    case Event::A_s:
      small_serving = 1;
      signal = sc.small.tx_power * gamma_draw(channel, ds.delta, rng) * std::pow(net.small[0].distance, -as);
      out.serving_distances = {net.small[0].distance};
      break;
    case Event::D_s:
      small_serving = k;
      for (std::size_t i = 0; i < k; ++i) {
        signal += sc.small.tx_power * gamma_draw(channel, ds.delta, rng) * std::pow(net.small[i].distance, -as);
      }
      out.serving_distances = nearest;
      break;
  }

  double interference = 0.0;
  for (std::size_t i = macro_serving; i < net.macro.size(); ++i) {
    interference += sc.macro.tx_power * gm[i] * std::pow(net.macro[i].distance, -am);
  }
  for (std::size_t i = small_serving; i < net.small.size(); ++i) {
    interference += sc.small.tx_power * gs[i] * std::pow(net.small[i].distance, -as);
  }
  const double denom = interference + sc.noise;
  out.sinr = denom > 0.0 ? signal / denom : std::numeric_limits<double>::max();
  return out;
}

TrialOutcome simulate_trial(const Scenario& sc, Mode mode, const Window& window, Rng& rng) {
  const NetworkRealization net = realize_network(sc, window, rng);
  return evaluate_trial(sc, mode, net, rng);
}

std::vector<TrialOutcome> run_trials_serial(const Scenario& sc, Mode mode, const Window& window, std::size_t trials,
                                            std::uint64_t seed) {
  sc.validate();
  window.validate(sc);
  std::vector<TrialOutcome> out(trials);
  for (std::size_t i = 0; i < trials; ++i) out[i] = trial_at(sc, mode, window, seed, i);
  return out;
}

std::vector<TrialOutcome> run_trials(const Scenario& sc, Mode mode, const Window& window, std::size_t trials,
                                     std::uint64_t seed, int threads) {
  sc.validate();
  window.validate(sc);
  std::vector<TrialOutcome> out(trials);
  parallel_for(trials, threads, [&](std::size_t i) { out[i] = trial_at(sc, mode, window, seed, i); });
  return out;
}

MetricResult coverage_from_sinrs(std::span<const double> sinr, double threshold) {
  if (sinr.empty()) throw ValidationError("no trials");
  std::size_t hits = 0;
  for (double s : sinr) hits += s > threshold ? 1 : 0;
  const double n = static_cast<double>(sinr.size());
  const double p = static_cast<double>(hits) / n;
  return {p, kZ95 * std::sqrt(p * (1.0 - p) / n), sinr.size(), Engine::mc};
}

MetricResult rate_from_sinrs(std::span<const double> sinr) {
  if (sinr.empty()) throw ValidationError("no trials");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double s : sinr) {
    const double r = std::log2(1.0 + s);
    sum += r;
    sum_sq += r * r;
  }
  const double n = static_cast<double>(sinr.size());
  const double mean = sum / n;
  const double var = sinr.size() > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
  return {mean, kZ95 * std::sqrt(var / n), sinr.size(), Engine::mc};
}

std::vector<double> sinrs_of(std::span<const TrialOutcome> outcomes) {
  std::vector<double> s(outcomes.size());
  std::transform(outcomes.begin(), outcomes.end(), s.begin(), [](const TrialOutcome& o) { return o.sinr; });
  return s;
}

MetricResult empirical_coverage(const Scenario& sc, Mode mode, double threshold, std::size_t trials,
                                std::uint64_t master_seed, int threads) {
  const auto outcomes = run_trials(sc, mode, Window::auto_sized(sc), trials, master_seed, threads);
  return coverage_from_sinrs(sinrs_of(outcomes), threshold);
}

MetricResult empirical_rate(const Scenario& sc, Mode mode, std::size_t trials, std::uint64_t master_seed,
                            int threads) {
  const auto outcomes = run_trials(sc, mode, Window::auto_sized(sc), trials, master_seed, threads);
  return rate_from_sinrs(sinrs_of(outcomes));
}

AssociationFrequencies empirical_association(const Scenario& sc, Mode mode, std::size_t trials,
                                             std::uint64_t master_seed, int threads) {
  sc.validate();
  if (trials == 0) throw ValidationError("no trials");
  const Window window = Window::auto_sized(sc, 0.0);
  const auto k = static_cast<std::size_t>(mode == Mode::cooperative ? sc.cluster_size : 1);
  std::vector<unsigned char> small_won(trials, 0);
  parallel_for(trials, threads, [&](std::size_t t) {
    Rng rng = stream_rng(master_seed, t);
    std::uniform_real_distribution<double> coord(-window.half_width, window.half_width);
    std::poisson_distribution<long long> macro_count(sc.macro.density * window.area());
    std::poisson_distribution<long long> small_count(sc.small.density * window.area());
    for (;;) {
      // Squared distances: nearest MBS and the k nearest SBSs.
      double best_macro = std::numeric_limits<double>::infinity();
      std::vector<double> best_small(k, std::numeric_limits<double>::infinity());
      const long long nm = macro_count(rng);
      for (long long i = 0; i < nm; ++i) {
        const double x = coord(rng);
        const double y = coord(rng);
        best_macro = std::min(best_macro, x * x + y * y);
      }
      const long long ns = small_count(rng);
      for (long long i = 0; i < ns; ++i) {
        const double x = coord(rng);
        const double y = coord(rng);
        const double d2 = x * x + y * y;
        if (d2 < best_small.back()) {
          auto pos = std::upper_bound(best_small.begin(), best_small.end(), d2);
          best_small.insert(pos, d2);
          best_small.pop_back();
        }
      }
      if (nm == 0 || static_cast<std::size_t>(ns) < k || best_macro == 0.0 || best_small.front() == 0.0) continue;
      for (double& d : best_small) d = std::sqrt(d);
      const Event e = select_tier(sc, mode, std::sqrt(best_macro), best_small);
      small_won[t] = serves_small(e) ? 1 : 0;
      break;
    }
  });
  AssociationFrequencies out;
  for (unsigned char w : small_won) (w ? out.small : out.macro) += 1;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(out.small) / n;
  out.small_fraction = {p, kZ95 * std::sqrt(p * (1.0 - p) / n), trials, Engine::mc};
  return out;
}

}  // namespace hetnet
