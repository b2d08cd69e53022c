// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "generators.hpp"
#include "hetnet/analysis.hpp"
#include "hetnet/laplace.hpp"
#include "oracles.hpp"

using namespace hetnet;

namespace {

double oracle_laplace(const LaplaceContext& ctx) {
  double log_l = 0.0;
  for (const auto& f : ctx.fields) {
    log_l += oracle::radial_log_laplace(f.density, f.power, f.psi, f.exclusion, ctx.s, ctx.pathloss);
  }
  for (const auto& p : ctx.points) log_l -= p.psi * std::log1p(ctx.s * p.gain);
  return std::exp(log_l);
}

/// Paper SISO defaults with the MBS serving at 10 m and T = 1.
LaplaceContext siso_macro_context() {
  const Scenario sc = reference_scenario();
  const std::vector<double> d{10.0};
  const auto ctx = serving_context(Event::A_m, sc, d);
  const double s = 1.0 * std::pow(10.0, 3.0) / sc.macro.tx_power;
  return laplace_context(ctx, sc, s);
}

LaplaceContext random_context(gen::Rng& rng) {
  const Scenario sc = gen::scenario(rng, gen::integer(rng, 1, 3));
  const Event e = gen::event(rng);
  const auto d = gen::distances(rng, e, sc.cluster_size);
  const double T = gen::log_uniform(rng, 0.05, 20.0);
  const double power = serves_small(e) ? sc.small.tx_power : sc.macro.tx_power;
  const double s = T * std::pow(d[0], sc.macro.pathloss) / power;
  return laplace_context(serving_context(e, sc, d), sc, s);
}

}  // namespace

TEST_SUITE("laplace") {
  TEST_CASE("trivial arguments") {
    LaplaceContext ctx = siso_macro_context();
    ctx.s = 0.0;
    CHECK(laplace_interference(ctx) == 1.0);
    ctx = siso_macro_context();
    for (auto& f : ctx.fields) f.density = 0.0;
    CHECK(laplace_interference(ctx) == 1.0);
  }

  TEST_CASE("paper defaults against the radial integral") {
    const LaplaceContext ctx = siso_macro_context();
    const double v = laplace_interference(ctx);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    CHECK(v == doctest::Approx(oracle_laplace(ctx)).epsilon(1e-6));
  }

  TEST_CASE("sum and single-Beta forms agree with the radial integral per field") {
    gen::Rng rng(101);
    for (int i = 0; i < 100; ++i) {
      const LaplaceContext ctx = random_context(rng);
      for (const auto& f : ctx.fields) {
        const double ref = oracle::radial_log_laplace(f.density, f.power, f.psi, f.exclusion, ctx.s, ctx.pathloss);
        CHECK(field_log_laplace(f, ctx.s, ctx.pathloss) == doctest::Approx(ref).epsilon(1e-7));
        CHECK(field_log_laplace_compact(f, ctx.s, ctx.pathloss) == doctest::Approx(ref).epsilon(1e-7));
      }
    }
  }

  TEST_CASE("isolated interferers") {
    LaplaceContext ctx;
    ctx.s = 2.0;
    ctx.points = {{0.5, 3}};
    CHECK(laplace_interference(ctx) == doctest::Approx(std::pow(2.0, -3.0)));
  }

  TEST_CASE("zeroth derivative and pure noise") {
    LaplaceContext ctx = siso_macro_context();
    ctx.noise = 1e-4;
    CHECK(laplace_derivative(ctx, 0) == doctest::Approx(std::exp(-ctx.s * ctx.noise) * laplace_interference(ctx)));

    LaplaceContext noise_only;
    noise_only.s = 3.0;
    noise_only.noise = 0.25;
    for (int k = 0; k <= 6; ++k) {
      CHECK(laplace_derivative(noise_only, k) ==
            doctest::Approx(std::pow(-0.25, k) * std::exp(-3.0 * 0.25)).epsilon(1e-12));
    }
  }

  TEST_CASE("derivatives match finite differences at the paper defaults") {
    LaplaceContext ctx = siso_macro_context();
    const double s0 = ctx.s;
    auto f = [&](double s) {
      LaplaceContext c = ctx;
      c.s = s;
      return std::exp(-s * c.noise) * laplace_interference(c);
    };
    for (int k = 1; k <= 3; ++k) {
      const double fd = oracle::central_difference(f, s0, 0.01 * s0, k);
      CHECK(laplace_derivative(ctx, k) == doctest::Approx(fd).epsilon(1e-4));
    }
  }

  TEST_CASE("closed-form and quadrature derivatives agree") {
    gen::Rng rng(55);
    for (int i = 0; i < 30; ++i) {
      const LaplaceContext ctx = random_context(rng);
      for (const auto& f : ctx.fields) {
        for (int j = 0; j <= 6; ++j) {
          const double a = field_log_laplace_derivative(f, ctx.s, ctx.pathloss, j, DerivativeMethod::closed_form);
          const double b = field_log_laplace_derivative(f, ctx.s, ctx.pathloss, j, DerivativeMethod::quadrature);
          CHECK(a == doctest::Approx(b).epsilon(1e-6));
        }
      }
    }
  }

  TEST_CASE("derivatives at s = 0") {
    InterferenceField f{0.02, 2.0, 2, 5.0};
    const double alpha = 3.0;
    for (int j = 1; j <= 4; ++j) {
      double rising = 1.0;
      for (int i = 0; i < j; ++i) rising *= f.psi + i;
      const double expected = 2.0 * oracle::pi * f.density * std::pow(-1.0, j) * rising * std::pow(f.power, j) *
                              std::pow(f.exclusion, 2.0 - j * alpha) / (j * alpha - 2.0);
      CHECK(field_log_laplace_derivative(f, 0.0, alpha, j) == doctest::Approx(expected).epsilon(1e-12));
    }
  }

  TEST_CASE("Laplace transform decreases in s and in density") {
    const LaplaceContext base = siso_macro_context();
    for (int i = 0; i < 10; ++i) {
      double prev = 2.0;
      for (int j = 0; j < 10; ++j) {
        LaplaceContext c = base;
        c.s = base.s * std::pow(10.0, -2.0 + 0.4 * j);
        for (auto& f : c.fields) f.density *= std::pow(2.0, i - 5);
        const double v = laplace_interference(c);
        CHECK(v <= prev);
        prev = v;
        if (i > 0) {
          LaplaceContext sparser = c;
          for (auto& f : sparser.fields) f.density /= 2.0;
          CHECK(laplace_interference(sparser) >= v);
        }
      }
    }
  }

  TEST_CASE("Gamma CCDF sum") {
    LaplaceContext ctx = siso_macro_context();
    ctx.noise = 1e-5;
    CHECK(gamma_ccdf_sum(ctx, 1) == doctest::Approx(laplace_derivative(ctx, 0)));
    double direct = 0.0, fact = 1.0;
    for (int k = 0; k < 4; ++k) {
      if (k > 0) fact *= k;
      direct += std::pow(-ctx.s, k) / fact * laplace_derivative(ctx, k);
    }
    CHECK(gamma_ccdf_sum(ctx, 4) == doctest::Approx(direct).epsilon(1e-10));
    double prev = 0.0;
    for (int n = 1; n <= 12; ++n) {
      const double v = gamma_ccdf_sum(ctx, n);
      CHECK(v >= prev);
      CHECK(v <= 1.0 + 1e-12);
      prev = v;
    }
  }
}
