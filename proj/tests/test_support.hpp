#pragma once

// Shared oracles for the tests. Bessel values come from the standard
// library's special functions so the integrand is independent of the
// library under test.

#include <algorithm>
#include <cmath>
#include <limits>

#include "besselquad/quadrature.hpp"

namespace testing_support {

inline double ref_j(int l, double x) {
  if (x < 0.0) return (l % 2 == 0 ? 1.0 : -1.0) * std::sph_bessel(l, -x);
  return std::sph_bessel(static_cast<unsigned>(l), x);
}

// The absolute floor sits just above the rounding noise of the rule, which
// scales with the integral of |f|, so cancelling integrals terminate.
template <class F>
double oracle(F f, double a, double b, double max_scale = 1.0, double tol = 1e-14) {
  besselquad::QuadratureOptions q;
  q.abs_tol = 1e-300;
  q.rel_tol = 1e-6;
  q.max_initial_width = 2.0 / max_scale;
  const double mass = besselquad::adaptive_quad([&](double x) { return std::abs(f(x)); }, a, b, q).value;
  q.rel_tol = tol;
  q.abs_tol = std::max(1e-13 * mass, 1e-300);
  q.max_evaluations = 5'000'000;
  return besselquad::adaptive_quad(f, a, b, q).value;
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), std::numeric_limits<double>::min());
}

// Fourth-order central difference.
template <class F>
double derivative(F f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

inline double ipow(double x, int n) { return std::pow(x, n); }

}  // namespace testing_support
