// SPDX-License-Identifier: Apache-2.0
//
// Special functions and the combinatorics behind high-order derivatives of
// exp(g(s)).
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "hetnet/rng.hpp"

namespace hetnet {

/// Largest derivative order supported by the partition tables.
inline constexpr int kMaxDerivativeOrder = 16;

/// Complementary incomplete Beta, integral of t^(p-1) (1-t)^(q-1) over [x, 1].
/// Requires q > 0 and x in [0, 1]; p <= 0 is allowed only for x > 0.
double comp_inc_beta(double p, double q, double x);

/// Same integral, parameterised by y = 1 - x so that x close to 1 keeps its
/// relative accuracy.
double comp_inc_beta_upper(double p, double q, double y);

/// CCDF of Gamma(shape, scale) for integer shape:
/// exp(-z/scale) * sum_{i<shape} (z/scale)^i / i!.
double gamma_ccdf(int shape, double scale, double z);

/// Gamma(shape, 1) draw for integer shape, as a sum of unit exponentials.
inline double sample_gamma(int shape, Rng& rng) {
  // -log of a product of uniforms; chunked so the product cannot underflow.
  double total = 0.0;
  int left = shape;
  while (left > 0) {
    const int n = left < 16 ? left : 16;
    double prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= uniform_open0(rng);
    total -= std::log(prod);
    left -= n;
  }
  return total;
}

/// Multiplicities (i_1, ..., i_k) with sum_j j * i_j = k.
struct Partition {
  std::vector<int> multiplicity;  // multiplicity[j-1] = i_j

  int order() const;   // k
  int blocks() const;  // sum_j i_j
};

/// Every partition of k, k in [1, kMaxDerivativeOrder]. Ordered by
/// decreasing number of blocks, then lexicographically.
std::vector<Partition> integer_partitions(int k);

/// k! / prod_j ((j!)^(i_j) * i_j!), the Faa di Bruno weight of a partition.
std::uint64_t faa_coefficient(const Partition& part);

/// Complete Bell polynomial Y_k(x_1, ..., x_k), evaluated over the cached
/// partition table. `x[j-1]` holds x_j; needs at least k entries.
/// d^k/ds^k exp(g) = exp(g) * Y_k(g', g'', ..., g^(k)).
double bell_polynomial(int k, std::span<const double> x);

}  // namespace hetnet
