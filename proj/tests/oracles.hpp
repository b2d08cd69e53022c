// SPDX-License-Identifier: Apache-2.0
//
// Independent reference computations for the tests: direct quadrature of the
// defining integrals, recurrences and finite differences. Nothing here calls
// into the library's numerics.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// -2 pi lambda * integral_d^inf (1 - (1 + s p u^-alpha)^-psi) u du.
inline double radial_log_laplace(double density, double power, int psi, double d, double s, double alpha) {
  if (density == 0.0 || s == 0.0) return 0.0;
  auto f = [&](double u) {
    const double x = s * power * std::pow(u, -alpha);
    return -std::expm1(-psi * std::log1p(x)) * u;
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  double err = 0.0;
  const double v = integrator.integrate(f, d, std::numeric_limits<double>::infinity(), 1e-13, &err);
  return -2.0 * pi * density * v;
}

/// Integral of t^(p-1) (1-t)^(q-1) over [a, b] by tanh-sinh.
inline double beta_integral(double p, double q, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto f = [&](double t) { return std::pow(t, p - 1.0) * std::pow(1.0 - t, q - 1.0); };
  return integrator.integrate(f, a, b, 1e-14);
}

/// Integral of t^(p-1) (1-t)^(q-1) over [1-y, 1], integrated in u = 1 - t so
/// the endpoint singularity sits at the origin.
inline double upper_beta_integral(double p, double q, double y) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto f = [&](double u) { return std::pow(1.0 - u, p - 1.0) * std::pow(u, q - 1.0); };
  return integrator.integrate(f, 0.0, y, 1e-14);
}

inline double gamma_ccdf(int k, double theta, double z) { return boost::math::gamma_q(static_cast<double>(k), z / theta); }

/// Complete Bell polynomials by Y_{n+1} = sum_i C(n, i) Y_{n-i} x_{i+1}.
inline std::vector<double> bell_by_recurrence(int kmax, std::span<const double> x) {
  std::vector<double> y(kmax + 1, 0.0);
  y[0] = 1.0;
  for (int n = 0; n < kmax; ++n) {
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
      acc += boost::math::binomial_coefficient<double>(n, i) * y[n - i] * x[i];
    }
    y[n + 1] = acc;
  }
  return y;
}

/// Bell numbers B_0..B_12.
inline constexpr std::array<double, 13> kBellNumbers{1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597};

/// Partition counts p(1)..p(12).
inline constexpr std::array<int, 12> kPartitionCounts{1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};

/// Central finite difference of order k (1, 2 or 3) on a 7-point stencil.
inline double central_difference(const std::function<double(double)>& f, double x, double h, int k) {
  static constexpr double c1[7] = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60};
  static constexpr double c2[7] = {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};
  static constexpr double c3[7] = {1.0 / 8, -1.0, 13.0 / 8, 0.0, -13.0 / 8, 1.0, -1.0 / 8};
  const double* c = k == 1 ? c1 : k == 2 ? c2 : c3;
  double acc = 0.0;
  for (int i = 0; i < 7; ++i) {
    if (c[i] != 0.0) acc += c[i] * f(x + (i - 3) * h);
  }
  return acc / std::pow(h, k);
}

/// Noncooperative SBS association probability:
/// lambda_s / (lambda_s + lambda_m (p_hat delta_hat b_hat)^(-2/alpha)).
inline double assoc_single(double lambda_m, double lambda_s, double weight, double alpha) {
  return lambda_s / (lambda_s + lambda_m * std::pow(weight, -2.0 / alpha));
}

/// Nearest-neighbour CDF of a PPP of density lambda.
inline double nearest_cdf(double lambda, double r) { return -std::expm1(-lambda * pi * r * r); }

/// Two-sample-free Kolmogorov-Smirnov statistic of sorted samples against a CDF.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double F = cdf(samples[i]);
    d = std::max({d, (i + 1) / n - F, F - i / n});
  }
  return d;
}

}  // namespace oracle
