// SPDX-License-Identifier: Apache-2.0
//
// Analytic engine: conditional and overall coverage probabilities and mean
// achievable rate, evaluated by numerical integration over serving distances.
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hetnet/association.hpp"
#include "hetnet/laplace.hpp"
#include "hetnet/model.hpp"

namespace hetnet {

/// How the cluster's received signal sum_i p_s h_i r_i^-alpha is treated.
enum class ClusterSignalModel {
  joint_mixture,  // exact: i.i.d. Gamma(delta_s) per member, Dirichlet mixing
  common_fading,  // one Gamma(delta_m) variable on the biased mean power sum
};

/// How D_m constrains the SBS tier.
enum class MacroConditioning {
  exact,      // the K nearest SBSs jointly lose the biased comparison
  surrogate,  // single-SBS exclusion radius r (p_hat delta_hat b_hat)^(1/alpha)
};

struct AnalysisOptions {
  ClusterSignalModel cluster_signal = ClusterSignalModel::joint_mixture;
  MacroConditioning macro_conditioning = MacroConditioning::exact;
  DerivativeMethod derivatives = DerivativeMethod::closed_form;
};

/// The association event in force, its serving distance(s) and the exclusion
/// radii it implies for interferers of each tier.
///
/// distances: {r} for A_m, A_s; the cluster r_1..r_K for D_s; {r_m} or
/// {r_m, r_1..r_K} for D_m (the latter places the K nearest SBSs as
/// individual interferers outside the SBS exclusion radius r_K).
struct ServingContext {
  Event event = Event::A_m;
  std::vector<double> distances;
  double macro_exclusion = 0.0;
  double small_exclusion = 0.0;
  std::vector<double> small_point_distances;
};

ServingContext serving_context(Event event, const Scenario& scenario, std::span<const double> distances);

/// Interference Laplace context for a serving context at argument s.
LaplaceContext laplace_context(const ServingContext& ctx, const Scenario& scenario, double s,
                               DerivativeMethod method = DerivativeMethod::closed_form);

/// P[SINR > T | event], averaged over the event's serving-distance law.
double coverage_conditional(Event event, const Scenario& scenario, double threshold,
                            const AnalysisOptions& options = {});

struct CoverageBreakdown {
  double association = 0.0;  // A_SBS or A_SBScl
  double macro = 0.0;        // conditional coverage of A_m or D_m
  double small = 0.0;        // conditional coverage of A_s or D_s
  double overall = 0.0;
};

CoverageBreakdown coverage_breakdown(Mode mode, const Scenario& scenario, double threshold,
                                     const AnalysisOptions& options = {});

/// (1 - A) P_macro + A P_small.
double coverage_overall(Mode mode, const Scenario& scenario, double threshold,
                        const AnalysisOptions& options = {});

/// (1/ln 2) * integral of P(theta)/(1+theta) over theta > 0, in bit/s/Hz.
double rate_from_coverage(const std::function<double(double)>& coverage, double tolerance = 1e-5);

double conditional_rate(Event event, const Scenario& scenario, const AnalysisOptions& options = {});

/// Association-weighted mean achievable rate.
double mean_rate(Mode mode, const Scenario& scenario, const AnalysisOptions& options = {});

}  // namespace hetnet
