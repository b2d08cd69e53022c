// SPDX-License-Identifier: Apache-2.0
#include "hetnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>

#include "hetnet/error.hpp"
#include "hetnet/quadrature.hpp"
#include "hetnet/rng.hpp"
#include "hetnet/specfun.hpp"

namespace hetnet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kCoverageStream = 0xC0FE5A3B1EULL;

double clamp_probability(double p, const char* what) {
  if (p < -1e-8 || !std::isfinite(p)) {
    throw IntegrationError(std::string(what) + ": probability " + std::to_string(p) + " out of range");
  }
  return std::clamp(p, 0.0, 1.0);
}

// Everything the integrands need, resolved once per query.
struct Query {
  const Scenario& sc;
  AnalysisOptions opt;
  double T;
  double alpha;
  double c;  // p_hat delta_hat b_hat
  DerivedTier m;
  DerivedTier s;
  double tol;

  Query(const Scenario& scenario, double threshold, const AnalysisOptions& options)
      : sc(scenario), opt(options), T(threshold) {
    sc.validate();
    if (!(threshold > 0.0) || !std::isfinite(threshold)) throw ValidationError("threshold must be positive");
    alpha = sc.pathloss();
    c = hat_ratios(sc).association_weight();
    m = derive_tier(sc.macro);
    s = derive_tier(sc.small);
    tol = sc.numerics.tolerance;
  }

  double inner_tol() const { return tol * 1e-1; }

  double ccdf(const ServingContext& ctx, double arg, int terms) const {
    return gamma_ccdf_sum(laplace_context(ctx, sc, arg, opt.derivatives), terms);
  }

  double small_r(double v) const { return std::sqrt(v / (kPi * sc.small.density)); }
  double macro_r(double v) const { return std::sqrt(v / (kPi * sc.macro.density)); }
  double ps_gain(double r) const { return sc.small.tx_power * std::pow(r, -alpha); }
};

// A_m and A_s: in v = pi r^2 Lambda the serving distance has density e^-v.
double coverage_single(const Query& q, bool small) {
  const double lambda = small ? q.sc.small.density + q.sc.macro.density * std::pow(q.c, -2.0 / q.alpha)
                              : q.sc.macro.density + q.sc.small.density * std::pow(q.c, 2.0 / q.alpha);
  const double power = small ? q.sc.small.tx_power : q.sc.macro.tx_power;
  const int terms = small ? q.s.delta : q.m.delta;
  const Event ev = small ? Event::A_s : Event::A_m;
  return integrate(
      [&](double v) {
        if (v <= 0.0) return std::exp(-v);
        const double r = std::sqrt(v / (kPi * lambda));
        const double rr[1] = {r};
        const ServingContext ctx = serving_context(ev, q.sc, rr);
        return std::exp(-v) * q.ccdf(ctx, q.T * std::pow(r, q.alpha) / power, terms);
      },
      0.0, kInf, q.tol, "single-link coverage", q.tol);
}

// Coverage of the cluster at fixed distances r, not yet weighted by the MBS
// null probability.
double cluster_link_coverage(const Query& q, std::span<const double> r) {
  const ServingContext ctx = serving_context(Event::D_s, q.sc, r);
  if (q.opt.cluster_signal == ClusterSignalModel::common_fading) {
    double sum = 0.0;
    for (double ri : r) sum += q.c * std::pow(ri, -q.alpha);
    return q.ccdf(ctx, q.T / (q.sc.macro.tx_power * sum), q.m.delta);
  }
  const int delta = q.s.delta;
  if (r.size() == 1) return q.ccdf(ctx, q.T / q.ps_gain(r[0]), delta);
  if (r.size() != 2) throw ValidationError("joint-mixture quadrature handles at most two cluster members");
  // S = G (U a_1 + (1-U) a_2), G ~ Gamma(2 delta), U ~ Beta(delta, delta).
  // Integrated in l = log(m / a_2), m = a_2 + U (a_1 - a_2), which resolves
  // the boundary layer near U = 0 when a_1 >> a_2.
  const double a1 = q.ps_gain(r[0]);
  const double a2 = q.ps_gain(r[1]);
  if (a1 <= a2 * (1.0 + 1e-12)) return q.ccdf(ctx, q.T / a2, 2 * delta);
  const double span = a1 - a2;
  const double norm = 1.0 / boost::math::beta(static_cast<double>(delta), static_cast<double>(delta));
  return integrate(
      [&](double l) {
        const double mean = a2 * std::exp(l);
        const double u = std::clamp((mean - a2) / span, 0.0, 1.0);
        const double w = delta == 1 ? 1.0 : norm * std::pow(u * (1.0 - u), delta - 1);
        if (w == 0.0) return 0.0;
        return w * mean / span * q.ccdf(ctx, q.T / mean, 2 * delta);
      },
      0.0, std::log(a1 / a2), q.inner_tol(), "cluster signal mixture", q.inner_tol());
}

double null_prob(const Query& q, std::span<const double> r) {
  const double d = exclusion_radius_mbs(q.sc, r);
  return std::exp(-kPi * q.sc.macro.density * d * d);
}

double coverage_cluster(const Query& q, double cluster_prob) {
  switch (q.sc.cluster_size) {
    case 1:
      return integrate(
          [&](double v) {
            if (v <= 0.0) return 0.0;
            const double rr[1] = {q.small_r(v)};
            return std::exp(-v) * null_prob(q, rr) * cluster_link_coverage(q, rr);
          },
          0.0, kInf, q.tol, "cluster coverage (K=1)", q.tol) / cluster_prob;
    case 2:
      return integrate(
          [&](double v2) {
            if (v2 <= 0.0) return 0.0;
            const double inner = integrate(
                [&](double v1) {
                  if (v1 <= 0.0) v1 = std::numeric_limits<double>::min();
                  const double rr[2] = {q.small_r(v1), q.small_r(v2)};
                  return null_prob(q, rr) * cluster_link_coverage(q, rr);
                },
                0.0, v2, q.inner_tol(), "cluster coverage (inner)", q.inner_tol());
            return std::exp(-v2) * inner;
          },
          0.0, kInf, q.tol, "cluster coverage (K=2)", q.tol) / cluster_prob;
    default:
      break;
  }
  // K > 2: ordered unit-PPP distances plus Dirichlet signal mixing, sampled.
  const auto K = static_cast<std::size_t>(q.sc.cluster_size);
  const int joint_shape = q.opt.cluster_signal == ClusterSignalModel::common_fading
                              ? q.m.delta
                              : q.sc.cluster_size * q.s.delta;
  if (joint_shape > kMaxDerivativeOrder + 1) {
    throw DomainError("cluster signal shape K * delta_s exceeds the supported derivative order");
  }
  Rng rng = stream_rng(q.sc.numerics.seed, kCoverageStream);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> r(K);
  std::vector<double> mix(K);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t n = 0; n < q.sc.numerics.cluster_samples; ++n) {
    double acc = 0.0;
    for (double& ri : r) ri = q.small_r(acc += expo(rng));
    double total = 0.0;
    for (double& u : mix) total += (u = sample_gamma(q.s.delta, rng));
    const double pn = null_prob(q, r);
    double cov = 0.0;
    const ServingContext ctx = serving_context(Event::D_s, q.sc, r);
    if (q.opt.cluster_signal == ClusterSignalModel::common_fading) {
      double sum = 0.0;
      for (double ri : r) sum += q.c * std::pow(ri, -q.alpha);
      cov = q.ccdf(ctx, q.T / (q.sc.macro.tx_power * sum), q.m.delta);
    } else {
      double mean = 0.0;
      for (std::size_t i = 0; i < K; ++i) mean += mix[i] / total * q.ps_gain(r[i]);
      cov = q.ccdf(ctx, q.T / mean, joint_shape);
    }
    num += pn * cov;
    den += pn;
  }
  return num / den;
}

double coverage_macro_coop(const Query& q, double retention_prob) {
  const double pm = q.sc.macro.tx_power;
  const int terms = q.m.delta;
  if (q.opt.macro_conditioning == MacroConditioning::surrogate) {
    return integrate(
        [&](double v) {
          if (v <= 0.0) return 0.0;
          const double r = q.macro_r(v);
          const double rr[1] = {r};
          const ServingContext ctx = serving_context(Event::D_m, q.sc, rr);
          return std::exp(-v) * macro_retention_prob(q.sc, r) * q.ccdf(ctx, q.T * std::pow(r, q.alpha) / pm, terms);
        },
        0.0, kInf, q.tol, "macro coverage (surrogate)", q.tol) / retention_prob;
  }
  // Sum of v_i^(-alpha/2) over the cluster must stay below cv(r).
  const double ex = -2.0 / q.alpha;
  const auto cv_of = [&](double r) {
    return std::pow(r, -q.alpha) * std::pow(kPi * q.sc.small.density, -q.alpha / 2.0) / q.c;
  };
  switch (q.sc.cluster_size) {
    case 1:
      return integrate(
          [&](double vm) {
            if (vm <= 0.0) return 0.0;
            const double r = q.macro_r(vm);
            const double arg = q.T * std::pow(r, q.alpha) / pm;
            const double v1min = std::pow(cv_of(r), ex);
            if (vm + v1min > 745.0) return 0.0;
            const double inner = integrate(
                [&](double v1) {
                  const double rr[2] = {r, q.small_r(v1)};
                  const ServingContext ctx = serving_context(Event::D_m, q.sc, rr);
                  return std::exp(-v1) * q.ccdf(ctx, arg, terms);
                },
                v1min, kInf, q.inner_tol(), "macro coverage (inner)", q.inner_tol());
            return std::exp(-vm) * inner;
          },
          0.0, kInf, q.tol, "macro coverage (K=1)", q.tol) / retention_prob;
    case 2:
      return integrate(
          [&](double vm) {
            if (vm <= 0.0) return 0.0;
            const double r = q.macro_r(vm);
            const double arg = q.T * std::pow(r, q.alpha) / pm;
            const double cv = cv_of(r);
            const double v2min = std::pow(cv / 2.0, ex);
            if (vm + v2min > 745.0) return 0.0;
            // v2 = v2min e^xi puts the boundary layer of width ~v2min at xi = O(1).
            const double mid = integrate(
                [&](double xi) {
                  const double v2 = v2min * std::exp(xi);
                  const double rest = cv - std::pow(v2, -q.alpha / 2.0);
                  if (rest <= 0.0) return 0.0;
                  const double lower = std::min(v2, std::pow(rest, ex));
                  if (lower >= v2) return 0.0;
                  const double inner = integrate(
                      [&](double v1) {
                        const double rr[3] = {r, q.small_r(v1), q.small_r(v2)};
                        const ServingContext ctx = serving_context(Event::D_m, q.sc, rr);
                        return q.ccdf(ctx, arg, terms);
                      },
                      lower, v2, q.inner_tol(), "macro coverage (inner)", q.inner_tol());
                  return v2 * std::exp(-v2) * inner;
                },
                0.0, std::log((v2min + 750.0) / v2min), q.inner_tol(), "macro coverage (middle)", q.inner_tol());
            return std::exp(-vm) * mid;
          },
          0.0, kInf, q.tol, "macro coverage (K=2)", q.tol) / retention_prob;
    default:
      break;
  }
  const auto K = static_cast<std::size_t>(q.sc.cluster_size);
  Rng rng = stream_rng(q.sc.numerics.seed, kCoverageStream + 1);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> dist(K + 1);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t n = 0; n < q.sc.numerics.cluster_samples; ++n) {
    const double r = q.macro_r(expo(rng));
    double acc = 0.0;
    double sum = 0.0;
    for (std::size_t i = 1; i <= K; ++i) {
      acc += expo(rng);
      sum += std::pow(acc, -q.alpha / 2.0);
      dist[i] = q.small_r(acc);
    }
    if (sum > cv_of(r)) continue;
    dist[0] = r;
    den += 1.0;
    const ServingContext ctx = serving_context(Event::D_m, q.sc, dist);
    num += q.ccdf(ctx, q.T * std::pow(r, q.alpha) / pm, terms);
  }
  if (den == 0.0) throw IntegrationError("no samples fell in the macro-serving region");
  return num / den;
}

double conditional_with(Event event, const Query& q, double event_prob) {
  switch (event) {
    case Event::A_m: return clamp_probability(coverage_single(q, false), "A_m coverage");
    case Event::A_s: return clamp_probability(coverage_single(q, true), "A_s coverage");
    case Event::D_m: return clamp_probability(coverage_macro_coop(q, event_prob), "D_m coverage");
    case Event::D_s: return clamp_probability(coverage_cluster(q, event_prob), "D_s coverage");
  }
  return 0.0;
}

}  // namespace

ServingContext serving_context(Event event, const Scenario& sc, std::span<const double> d) {
  if (d.empty()) throw ValidationError("serving context needs at least one distance");
  const double alpha = sc.pathloss();
  const double c = hat_ratios(sc).association_weight();
  ServingContext ctx;
  ctx.event = event;
  ctx.distances.assign(d.begin(), d.end());
  switch (event) {
    case Event::A_m:
      ctx.macro_exclusion = d[0];
      ctx.small_exclusion = std::pow(c, 1.0 / alpha) * d[0];
      break;
    case Event::A_s:
      ctx.small_exclusion = d[0];
      ctx.macro_exclusion = std::pow(c, -1.0 / alpha) * d[0];
      break;
    case Event::D_s:
      ctx.small_exclusion = d.back();
      ctx.macro_exclusion = exclusion_radius_mbs(sc, d);
      break;
    case Event::D_m:
      ctx.macro_exclusion = d[0];
      if (d.size() > 1) {
        ctx.small_exclusion = d.back();
        ctx.small_point_distances.assign(d.begin() + 1, d.end());
      } else {
        ctx.small_exclusion = std::pow(c, 1.0 / alpha) * d[0];
      }
      break;
  }
  return ctx;
}

LaplaceContext laplace_context(const ServingContext& ctx, const Scenario& sc, double s, DerivativeMethod method) {
  LaplaceContext lc = make_laplace_context(sc, s, ctx.macro_exclusion, ctx.small_exclusion);
  lc.method = method;
  for (double r : ctx.small_point_distances) {
    lc.points.push_back({sc.small.tx_power * std::pow(r, -lc.pathloss), sc.small.users});
  }
  return lc;
}

double coverage_conditional(Event event, const Scenario& sc, double threshold, const AnalysisOptions& options) {
  const Query q(sc, threshold, options);
  double prob = 1.0;
  if (event == Event::D_m || event == Event::D_s) prob = event_probability(event, sc);
  return conditional_with(event, q, prob);
}

CoverageBreakdown coverage_breakdown(Mode mode, const Scenario& sc, double threshold, const AnalysisOptions& options) {
  const Query q(sc, threshold, options);
  CoverageBreakdown out;
  if (mode == Mode::noncooperative) {
    out.association = assoc_prob_sbs_single(sc);
    out.macro = conditional_with(Event::A_m, q, 1.0 - out.association);
    out.small = conditional_with(Event::A_s, q, out.association);
  } else {
    out.association = assoc_prob_sbs_cluster(sc);
    out.macro = conditional_with(Event::D_m, q, 1.0 - out.association);
    out.small = conditional_with(Event::D_s, q, out.association);
  }
  out.overall = (1.0 - out.association) * out.macro + out.association * out.small;
  return out;
}

double coverage_overall(Mode mode, const Scenario& sc, double threshold, const AnalysisOptions& options) {
  return coverage_breakdown(mode, sc, threshold, options).overall;
}

double rate_from_coverage(const std::function<double(double)>& coverage, double tolerance) {
  // theta = e^y; the integrand P(e^y) / (1 + e^-y) decays as e^y to the left
  // and with P to the right, where it is truncated once P < 1e-6.
  const auto f = [&](double y) { return coverage(std::exp(y)) / (1.0 + std::exp(-y)); };
  constexpr double kLeft = -40.0;
  double right = 0.0;
  while (right < 120.0 && coverage(std::exp(right)) >= 1e-6) right += 4.0;
  const double total = integrate(f, kLeft, 0.0, tolerance, "rate integral", tolerance) +
                       (right > 0.0 ? integrate(f, 0.0, right, tolerance, "rate integral", tolerance) : 0.0);
  return std::max(0.0, total / std::numbers::ln2);
}

double conditional_rate(Event event, const Scenario& sc, const AnalysisOptions& options) {
  double prob = 1.0;
  if (event == Event::D_m || event == Event::D_s) prob = event_probability(event, sc);
  Scenario coarse = sc;
  coarse.numerics.tolerance = std::max(sc.numerics.tolerance, 1e-4);
  return rate_from_coverage(
      [&](double theta) { return conditional_with(event, Query(coarse, theta, options), prob); },
      coarse.numerics.tolerance);
}

double mean_rate(Mode mode, const Scenario& sc, const AnalysisOptions& options) {
  if (mode == Mode::noncooperative) {
    const double a = assoc_prob_sbs_single(sc);
    return (1.0 - a) * conditional_rate(Event::A_m, sc, options) + a * conditional_rate(Event::A_s, sc, options);
  }
  const double a = assoc_prob_sbs_cluster(sc);
  return (1.0 - a) * conditional_rate(Event::D_m, sc, options) + a * conditional_rate(Event::D_s, sc, options);
}

}  // namespace hetnet
