// SPDX-License-Identifier: Apache-2.0
//
// Laplace transform of the aggregate interference and its derivatives.
//
// Interference is split into PPP fields (one per tier, with an exclusion
// radius) and individually placed interferers (cluster members that do not
// serve the user). With G(s) = -sN + sum_fields g(s) + sum_points g_pt(s),
// the Gamma-CCDF coverage sum is
//   sum_{k<n} (-s)^k/k! d^k/ds^k exp(G) = exp(G) sum_{k<n} Y_k(z_1..z_k)/k!,
// with z_j = (-s)^j G^(j)(s) >= 0 and Y_k the complete Bell polynomial.
#pragma once

#include <vector>

#include "hetnet/model.hpp"

namespace hetnet {

/// Homogeneous PPP of interferers beyond `exclusion` metres.
struct InterferenceField {
  double density = 0.0;
  double power = 0.0;  // per-user transmit power
  int psi = 1;         // Gamma shape of the interfering link
  double exclusion = 0.0;
};

/// Interferer at a known distance; `gain` = p r^-alpha.
struct PointInterferer {
  double gain = 0.0;
  int psi = 1;
};

enum class DerivativeMethod {
  closed_form,  // incomplete-Beta expression
  quadrature,   // adaptive quadrature of the differentiated radial integral
};

struct LaplaceContext {
  double s = 0.0;
  double pathloss = 3.0;
  double noise = 0.0;
  std::vector<InterferenceField> fields;
  std::vector<PointInterferer> points;
  DerivativeMethod method = DerivativeMethod::closed_form;

  void validate() const;
};

/// Both tiers as PPP fields with exclusion radii d_m and d_s.
LaplaceContext make_laplace_context(const Scenario& scenario, double s, double macro_exclusion,
                                    double small_exclusion);

/// w = 1 / (1 + s p d^-alpha), the lower limit of the incomplete Beta.
double beta_lower_limit(double s, double power, double exclusion, double alpha);

/// log of the field's Laplace transform,
/// -(2 pi lambda/alpha)(s p)^(2/alpha) sum_i C(psi,i) B'_w(psi-i+2/alpha, i-2/alpha).
double field_log_laplace(const InterferenceField& field, double s, double alpha);

/// The same quantity after integrating the radial form by parts: a single
/// incomplete Beta instead of psi of them,
/// -2 pi lambda [ (psi/2)(s p)^(2/alpha) B'_w(psi+2/alpha, 1-2/alpha) - d^2 (1-w^psi)/2 ].
double field_log_laplace_compact(const InterferenceField& field, double s, double alpha);

/// j-th derivative of field_log_laplace with respect to s (j >= 0).
double field_log_laplace_derivative(const InterferenceField& field, double s, double alpha, int j,
                                    DerivativeMethod method = DerivativeMethod::closed_form);

/// L_I(s) without the noise factor.
double laplace_interference(const LaplaceContext& ctx);

/// d^k/ds^k [exp(-sN) L_I(s)] by Faa di Bruno.
double laplace_derivative(const LaplaceContext& ctx, int k);

/// z_j = (-s)^j G^(j)(s) for j = 1..n, returned in z[0..n-1].
std::vector<double> scaled_log_derivatives(const LaplaceContext& ctx, int n);

/// sum_{k<n} (-s)^k/k! d^k/ds^k [exp(-sN) L_I(s)]: the probability that a
/// Gamma(n, 1) signal, scaled so that s = T/(signal mean power per unit),
/// exceeds T times interference plus noise.
double gamma_ccdf_sum(const LaplaceContext& ctx, int n);

}  // namespace hetnet
