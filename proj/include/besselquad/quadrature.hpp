#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature. Serves both as the small-x
// fallback and as the brute-force oracle in tests.
//
// The integrand is called from the calling thread only, but callers should
// not rely on that: integrands must be safe to invoke concurrently.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "besselquad/errors.hpp"

namespace besselquad {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t max_evaluations = 1'000'000;
  // Initial panels are no wider than this (e.g. pi / max scale, so each
  // half-oscillation is resolved). Zero or negative disables the split.
  double max_initial_width = 0.0;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the nodes kKronrodNodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Globally adaptive bisection: the panel with the largest |K15 - G7| is
/// split until the summed estimate meets max(abs_tol, rel_tol |value|) or the
/// evaluation budget runs out (converged = false, best estimate returned).
template <class F>
QuadratureResult adaptive_quad(F&& integrand, double a, double b,
                               const QuadratureOptions& opts = {}) {
  if (!(a < b)) {
    if (a == b) return {0.0, 0.0, 0, true};
    throw DomainError("adaptive_quad: requires a < b");
  }
  if (!(opts.abs_tol > 0.0 || opts.rel_tol > 0.0))
    throw DomainError("adaptive_quad: tolerance must be positive");

  std::size_t panels = 1;
  if (opts.max_initial_width > 0.0)
    panels = static_cast<std::size_t>(std::ceil((b - a) / opts.max_initial_width));
  panels = std::max<std::size_t>(panels, 1);

  std::priority_queue<detail::Panel> heap;
  QuadratureResult result;
  double total = 0.0;
  double total_error = 0.0;
  const double width = (b - a) / static_cast<double>(panels);
  for (std::size_t i = 0; i < panels; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = (i + 1 == panels) ? b : a + width * static_cast<double>(i + 1);
    detail::Panel p = detail::gauss_kronrod_15(integrand, lo, hi);
    result.evaluations += 15;
    total += p.value;
    total_error += p.error;
    heap.push(p);
  }

  auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
  while (total_error > tolerance()) {
    if (result.evaluations + 30 > opts.max_evaluations) break;
    detail::Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel cannot be split further in double precision.
      heap.push(worst);
      break;
    }
    detail::Panel left = detail::gauss_kronrod_15(integrand, worst.a, mid);
    detail::Panel right = detail::gauss_kronrod_15(integrand, mid, worst.b);
    result.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  total_error = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_error += heap.top().error;
    heap.pop();
  }
  result.value = total;
  result.error_estimate = total_error;
  result.converged = total_error <= tolerance();
  return result;
}

}  // namespace besselquad
