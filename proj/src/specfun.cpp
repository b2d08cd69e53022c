// SPDX-License-Identifier: Apache-2.0
#include "hetnet/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "hetnet/error.hpp"

namespace hetnet {

namespace {

using DoublePolicy = boost::math::policies::policy<boost::math::policies::promote_double<false>>;

// Integral of t^(p-1) (1-t)^(q-1) over [1-y, 1], written in u = 1 - t.
double upper_tail_quadrature(double p, double q, double y) {
  auto f = [p, q](double u) { return std::pow(1.0 - u, p - 1.0) * std::pow(u, q - 1.0); };
  boost::math::quadrature::tanh_sinh<double> integrator;
  double err = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(f, 0.0, y, 1e-12, &err, &l1);
  if (!std::isfinite(value) || err > 1e-9 * std::max(1.0, l1)) {
    throw IntegrationError("incomplete Beta quadrature did not converge");
  }
  return value;
}

}  // namespace

double comp_inc_beta_upper(double p, double q, double y) {
  if (!(q > 0.0) || !std::isfinite(p) || !std::isfinite(q)) {
    throw DomainError("incomplete Beta requires q > 0 and finite parameters");
  }
  if (!(y >= 0.0 && y <= 1.0)) throw DomainError("incomplete Beta limit outside [0, 1]");
  if (y == 0.0) return 0.0;
  if (p > 0.0) return boost::math::beta(q, p, y, DoublePolicy());
  if (y == 1.0) throw DomainError("complete Beta diverges for p <= 0");
  return upper_tail_quadrature(p, q, y);
}

double comp_inc_beta(double p, double q, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("incomplete Beta limit outside [0, 1]");
  return comp_inc_beta_upper(p, q, 1.0 - x);
}

double gamma_ccdf(int shape, double scale, double z) {
  if (shape < 1 || !(scale > 0.0)) throw DomainError("Gamma CCDF needs shape >= 1 and scale > 0");
  if (z <= 0.0) return 1.0;
  const double x = z / scale;
  double term = 1.0;
  double sum = 1.0;
  for (int i = 1; i < shape; ++i) {
    term *= x / i;
    sum += term;
  }
  return std::min(1.0, std::exp(-x) * sum);
}

int Partition::order() const {
  int k = 0;
  for (std::size_t j = 0; j < multiplicity.size(); ++j) k += static_cast<int>(j + 1) * multiplicity[j];
  return k;
}

int Partition::blocks() const {
  int m = 0;
  for (int i : multiplicity) m += i;
  return m;
}

namespace {

void enumerate(int remaining, int largest, std::vector<int>& mult, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(Partition{mult});
    return;
  }
  for (int part = std::min(remaining, largest); part >= 1; --part) {
    ++mult[part - 1];
    enumerate(remaining - part, part, mult, out);
    --mult[part - 1];
  }
}

}  // namespace

std::vector<Partition> integer_partitions(int k) {
  if (k < 1 || k > kMaxDerivativeOrder) {
    throw DomainError("partition order must lie in [1, " + std::to_string(kMaxDerivativeOrder) + "]");
  }
  std::vector<int> mult(static_cast<std::size_t>(k), 0);
  std::vector<Partition> out;
  enumerate(k, k, mult, out);
  std::stable_sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
    if (a.blocks() != b.blocks()) return a.blocks() > b.blocks();
    return a.multiplicity > b.multiplicity;
  });
  return out;
}

std::uint64_t faa_coefficient(const Partition& part) {
  // k! / prod((j!)^(i_j) i_j!) built as a product of binomials keeps every
  // intermediate an exact integer well inside 64 bits for k <= 16.
  const auto binom = [](int n, int r) {
    std::uint64_t b = 1;
    for (int i = 1; i <= r; ++i) b = b * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
    return b;
  };
  std::uint64_t result = 1;
  int placed = 0;
  for (std::size_t idx = 0; idx < part.multiplicity.size(); ++idx) {
    const int j = static_cast<int>(idx + 1);
    const int count = part.multiplicity[idx];
    // Choose the elements for the `count` blocks of size j, then divide out
    // the ordering of identical blocks.
    std::uint64_t ways = 1;
    int pool = placed + j * count;
    for (int c = 0; c < count; ++c) {
      ways *= binom(pool, j);
      pool -= j;
    }
    std::uint64_t fact = 1;
    for (int c = 2; c <= count; ++c) fact *= static_cast<std::uint64_t>(c);
    result *= ways / fact;
    placed += j * count;
  }
  return result;
}

namespace {

struct PartitionTerm {
  double coefficient;
  std::vector<std::pair<int, int>> powers;  // (j, i_j) with i_j > 0
};

const std::vector<PartitionTerm>& partition_table(int k) {
  static std::array<std::vector<PartitionTerm>, kMaxDerivativeOrder + 1> tables;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int n = 1; n <= kMaxDerivativeOrder; ++n) {
      for (const Partition& part : integer_partitions(n)) {
        PartitionTerm term{static_cast<double>(faa_coefficient(part)), {}};
        for (std::size_t idx = 0; idx < part.multiplicity.size(); ++idx) {
          if (part.multiplicity[idx] > 0) term.powers.emplace_back(static_cast<int>(idx + 1), part.multiplicity[idx]);
        }
        tables[static_cast<std::size_t>(n)].push_back(std::move(term));
      }
    }
  });
  return tables[static_cast<std::size_t>(k)];
}

}  // namespace

double bell_polynomial(int k, std::span<const double> x) {
  if (k == 0) return 1.0;
  if (k < 0 || k > kMaxDerivativeOrder) throw DomainError("Bell polynomial order out of range");
  if (x.size() < static_cast<std::size_t>(k)) throw DomainError("Bell polynomial needs k arguments");
  double sum = 0.0;
  for (const PartitionTerm& term : partition_table(k)) {
    double prod = term.coefficient;
    for (const auto& [j, power] : term.powers) {
      const double base = x[static_cast<std::size_t>(j - 1)];
      double v = base;
      for (int e = 1; e < power; ++e) v *= base;
      prod *= v;
    }
    sum += prod;
  }
  return sum;
}

}  // namespace hetnet
