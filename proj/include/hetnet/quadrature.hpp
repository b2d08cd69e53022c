// SPDX-License-Identifier: Apache-2.0
//
// Globally adaptive Gauss-Kronrod (21-point) quadrature with a mixed
// absolute/relative stopping rule. Infinite limits are mapped onto a finite
// interval first.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hetnet/error.hpp"

namespace hetnet {

namespace detail {

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class G>
Segment gk21(G& g, double lo, double hi) {
  double err = 0.0;
  double l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(g, lo, hi, 0, 0.0, &err, &l1);
  return {lo, hi, v, err};
}

template <class G>
double adaptive(G&& g, double lo, double hi, double rel_tol, double abs_tol, const char* what,
                std::size_t max_segments) {
  std::priority_queue<Segment> heap;
  Segment first = gk21(g, lo, hi);
  double total = first.value;
  double error = first.error;
  heap.push(first);
  while (error > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (heap.size() >= max_segments) {
      if (error > 10.0 * std::max(abs_tol, rel_tol * std::abs(total))) {
        throw IntegrationError(std::string(what) + ": error estimate " + std::to_string(error) +
                               " above tolerance after " + std::to_string(max_segments) + " segments");
      }
      break;
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      throw IntegrationError(std::string(what) + ": interval cannot be subdivided further");
    }
    const Segment left = gk21(g, worst.lo, mid);
    const Segment right = gk21(g, mid, worst.hi);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  if (!std::isfinite(total)) throw IntegrationError(std::string(what) + ": non-finite result");
  return total;
}

}  // namespace detail

/// Integral of f over [a, b]; either limit may be infinite. Stops once the
/// estimated error is below max(abs_tol, rel_tol * |result|) and throws
/// IntegrationError if that cannot be reached.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol, const char* what = "integral", double abs_tol = 0.0,
                 std::size_t max_segments = 400) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, rel_tol, what, abs_tol, max_segments);
  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (!lo_inf && !hi_inf) return detail::adaptive(f, a, b, rel_tol, abs_tol, what, max_segments);
  if (!lo_inf) {
    auto g = [&](double t) {
      const double u = 1.0 - t;
      return f(a + t / u) / (u * u);
    };
    return detail::adaptive(g, 0.0, 1.0, rel_tol, abs_tol, what, max_segments);
  }
  if (!hi_inf) {
    auto g = [&](double t) {
      const double u = 1.0 - t;
      return f(b - t / u) / (u * u);
    };
    return detail::adaptive(g, 0.0, 1.0, rel_tol, abs_tol, what, max_segments);
  }
  auto g = [&](double t) {
    const double u = 1.0 - t * t;
    return f(t / u) * (1.0 + t * t) / (u * u);
  };
  return detail::adaptive(g, -1.0, 1.0, rel_tol, abs_tol, what, max_segments);
}

}  // namespace hetnet
