// SPDX-License-Identifier: Apache-2.0
#include "hetnet/laplace.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hetnet/error.hpp"
#include "hetnet/quadrature.hpp"
#include "hetnet/specfun.hpp"

namespace hetnet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRadialTolerance = 1e-11;

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Rising factorial (psi)_j.
double pochhammer(int psi, int j) {
  double p = 1.0;
  for (int i = 0; i < j; ++i) p *= psi + i;
  return p;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// 1 - w = x / (1 + x) with x = s p d^-alpha; equals 1 when there is no exclusion.
double upper_limit(double s, double power, double exclusion, double alpha) {
  if (exclusion <= 0.0) return 1.0;
  const double x = s * power * std::pow(exclusion, -alpha);
  if (std::isinf(x)) return 1.0;
  return x / (1.0 + x);
}

// Integral of f(u) u du over [d, inf), taken in y = log(u / d) (or log u).
template <class F>
double radial_integral(F&& f, double d) {
  if (d > 0.0) {
    return integrate([&](double y) {
      const double u = d * std::exp(y);
      const double v = f(u);
      return v == 0.0 ? 0.0 : v * u * u;
    }, 0.0, std::numeric_limits<double>::infinity(), kRadialTolerance, "radial interference integral");
  }
  return integrate([&](double y) {
    const double u = std::exp(y);
    const double v = f(u);
    return v == 0.0 ? 0.0 : v * u * u;
  }, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), kRadialTolerance,
     "radial interference integral");
}

double radial_derivative(const InterferenceField& fd, double s, double alpha, int j) {
  const double psi = fd.psi;
  if (j == 0) {
    return -2.0 * kPi * fd.density * radial_integral([&](double u) {
      const double a = s * fd.power * std::pow(u, -alpha);
      return -std::expm1(-psi * std::log1p(a));
    }, fd.exclusion);
  }
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  return sign * 2.0 * kPi * fd.density * pochhammer(fd.psi, j) * radial_integral([&](double u) {
    const double g = fd.power * std::pow(u, -alpha);
    return std::pow(g, j) * std::pow(1.0 + s * g, -psi - j);
  }, fd.exclusion);
}

// z_j = (-s)^j g^(j)(s) for a field, j >= 1; nonnegative.
double field_scaled(const InterferenceField& fd, double s, double alpha, int j) {
  if (fd.density == 0.0 || s == 0.0) return 0.0;
  const double y = upper_limit(s, fd.power, fd.exclusion, alpha);
  const double delta = 2.0 / alpha;
  return 2.0 * kPi * fd.density / alpha * pochhammer(fd.psi, j) * std::pow(s * fd.power, delta) *
         comp_inc_beta_upper(fd.psi + delta, j - delta, y);
}

}  // namespace

void LaplaceContext::validate() const {
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("Laplace argument must be finite and non-negative");
  if (!(pathloss > 2.0)) throw DomainError("path-loss exponent must exceed 2");
  if (!(noise >= 0.0)) throw DomainError("noise power must be non-negative");
  for (const auto& f : fields) {
    if (!(f.density >= 0.0) || !(f.power > 0.0) || f.psi < 1 || !(f.exclusion >= 0.0)) {
      throw DomainError("invalid interference field");
    }
  }
  for (const auto& p : points) {
    if (!(p.gain >= 0.0) || p.psi < 1) throw DomainError("invalid point interferer");
  }
}

LaplaceContext make_laplace_context(const Scenario& sc, double s, double macro_exclusion, double small_exclusion) {
  LaplaceContext ctx;
  ctx.s = s;
  ctx.pathloss = sc.pathloss();
  ctx.noise = sc.noise;
  ctx.fields.push_back({sc.macro.density, sc.macro.tx_power, sc.macro.users, macro_exclusion});
  ctx.fields.push_back({sc.small.density, sc.small.tx_power, sc.small.users, small_exclusion});
  return ctx;
}

double beta_lower_limit(double s, double power, double exclusion, double alpha) {
  if (exclusion <= 0.0) return 0.0;
  return 1.0 / (1.0 + s * power * std::pow(exclusion, -alpha));
}

double field_log_laplace(const InterferenceField& fd, double s, double alpha) {
  if (fd.density == 0.0 || s == 0.0) return 0.0;
  const double y = upper_limit(s, fd.power, fd.exclusion, alpha);
  const double delta = 2.0 / alpha;
  double sum = 0.0;
  for (int i = 1; i <= fd.psi; ++i) {
    sum += binomial(fd.psi, i) * comp_inc_beta_upper(fd.psi - i + delta, i - delta, y);
  }
  return -2.0 * kPi * fd.density / alpha * std::pow(s * fd.power, delta) * sum;
}

double field_log_laplace_compact(const InterferenceField& fd, double s, double alpha) {
  if (fd.density == 0.0 || s == 0.0) return 0.0;
  const double y = upper_limit(s, fd.power, fd.exclusion, alpha);
  const double delta = 2.0 / alpha;
  const double beta_term = 0.5 * fd.psi * std::pow(s * fd.power, delta) * comp_inc_beta_upper(fd.psi + delta, 1.0 - delta, y);
  double boundary = 0.0;
  if (fd.exclusion > 0.0) {
    // 1 - w^psi with w = 1 / (1 + x)
    const double x = s * fd.power * std::pow(fd.exclusion, -alpha);
    boundary = -0.5 * fd.exclusion * fd.exclusion * std::expm1(-fd.psi * std::log1p(x));
  }
  return -2.0 * kPi * fd.density * (beta_term - boundary);
}

double field_log_laplace_derivative(const InterferenceField& fd, double s, double alpha, int j,
                                    DerivativeMethod method) {
  if (j < 0) throw DomainError("derivative order must be non-negative");
  if (fd.density == 0.0) return 0.0;
  if (method == DerivativeMethod::quadrature) return radial_derivative(fd, s, alpha, j);
  if (j == 0) return field_log_laplace_compact(fd, s, alpha);
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  if (s == 0.0) {
    if (fd.exclusion <= 0.0) throw DomainError("interference derivative diverges at s = 0 without exclusion");
    return sign * 2.0 * kPi * fd.density * pochhammer(fd.psi, j) * std::pow(fd.power, j) *
           std::pow(fd.exclusion, 2.0 - j * alpha) / (j * alpha - 2.0);
  }
  return sign * field_scaled(fd, s, alpha, j) / std::pow(s, j);
}

double laplace_interference(const LaplaceContext& ctx) {
  ctx.validate();
  double g = 0.0;
  for (const auto& f : ctx.fields) {
    g += field_log_laplace_derivative(f, ctx.s, ctx.pathloss, 0, ctx.method);
  }
  for (const auto& p : ctx.points) g -= p.psi * std::log1p(p.gain * ctx.s);
  return std::exp(g);
}

double laplace_derivative(const LaplaceContext& ctx, int k) {
  ctx.validate();
  if (k < 0 || k > kMaxDerivativeOrder) throw DomainError("derivative order out of range");
  const double value = std::exp(-ctx.s * ctx.noise) * laplace_interference(ctx);
  if (k == 0) return value;
  std::vector<double> d(static_cast<std::size_t>(k), 0.0);
  for (int j = 1; j <= k; ++j) {
    double gj = 0.0;
    for (const auto& f : ctx.fields) gj += field_log_laplace_derivative(f, ctx.s, ctx.pathloss, j, ctx.method);
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    for (const auto& p : ctx.points) {
      gj += sign * p.psi * factorial(j - 1) * std::pow(p.gain / (1.0 + p.gain * ctx.s), j);
    }
    if (j == 1) gj -= ctx.noise;
    d[static_cast<std::size_t>(j - 1)] = gj;
  }
  return value * bell_polynomial(k, d);
}

std::vector<double> scaled_log_derivatives(const LaplaceContext& ctx, int n) {
  std::vector<double> z(static_cast<std::size_t>(std::max(n, 0)), 0.0);
  if (ctx.s == 0.0) return z;
  for (int j = 1; j <= n; ++j) {
    double zj = 0.0;
    for (const auto& f : ctx.fields) {
      if (ctx.method == DerivativeMethod::closed_form) {
        zj += field_scaled(f, ctx.s, ctx.pathloss, j);
      } else {
        zj += std::pow(-ctx.s, j) * radial_derivative(f, ctx.s, ctx.pathloss, j);
      }
    }
    for (const auto& p : ctx.points) {
      const double x = p.gain * ctx.s;
      zj += p.psi * factorial(j - 1) * std::pow(x / (1.0 + x), j);
    }
    if (j == 1) zj += ctx.s * ctx.noise;
    z[static_cast<std::size_t>(j - 1)] = zj;
  }
  return z;
}

double gamma_ccdf_sum(const LaplaceContext& ctx, int n) {
  if (n < 1 || n > kMaxDerivativeOrder + 1) throw DomainError("Gamma shape out of supported range");
  const double base = std::exp(-ctx.s * ctx.noise) * laplace_interference(ctx);
  if (n == 1 || base == 0.0) return base;
  const std::vector<double> z = scaled_log_derivatives(ctx, n - 1);
  double sum = 1.0;
  double kfact = 1.0;
  for (int k = 1; k < n; ++k) {
    kfact *= k;
    sum += bell_polynomial(k, z) / kfact;
  }
  return std::min(1.0, base * sum);
}

}  // namespace hetnet
