#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "besselquad/antiderivative.hpp"
#include "besselquad/errors.hpp"

namespace besselquad {

namespace detail {

// x^l / (2l+1)!!, computed incrementally so large l underflows gracefully.
template <class T>
T sph_leading(int l, T x) {
  T v = 1;
  for (int m = 1; m <= l; ++m) v *= x / T(2 * m + 1);
  return v;
}

// j_l(x) for x > 0; see sph_j for the regimes.
template <class T>
T sph_j_impl(int l, T x) {
  if (x < T(1e-4)) {
    const T x2 = x * x;
    const T a = T(2 * l + 3);
    return sph_leading(l, x) * (1 - x2 / (2 * a) + x2 * x2 / (8 * a * (a + 2)));
  }
  const T s = std::sin(x);
  const T c = std::cos(x);
  const T j0 = s / x;
  if (l == 0) return j0;

  if (x >= T(l + 2)) {
    T jm1 = j0;
    T jcur = s / (x * x) - c / x;
    for (int m = 2; m <= l; ++m) {
      const T jn = T(2 * m - 1) / x * jcur - jm1;
      jm1 = jcur;
      jcur = jn;
    }
    return jcur;
  }

  const int start = l + std::max(20, static_cast<int>(std::ceil(1.5 * l)));
  // r_m = j_m / j_{m-1} = x / (2m + 1 - x r_{m+1})
  T r = 0;
  for (int m = start; m > l; --m) r = x / (T(2 * m + 1) - x * r);
  T prod = 1;
  // prod accumulates r_l * r_{l-1} * ... down to r_2
  for (int m = l; m >= 2; --m) {
    r = x / (T(2 * m + 1) - x * r);
    prod *= r;
  }
  const T r1 = x / (3 - x * r);
  if (x < 3) return j0 * r1 * prod;
  const T j1 = s / (x * x) - c / x;
  if (std::abs(j0) >= std::abs(j1)) return j0 * r1 * prod;
  return j1 * prod;
}

template <class T>
T sph_j_signed(int l, T x) {
  if (x < 0) {
    const T v = sph_j_impl(l, -x);
    return (l % 2 == 0) ? v : -v;
  }
  if (x == 0) return l == 0 ? T(1) : T(0);
  return sph_j_impl(l, x);
}

// Any real x and l >= -1, with j_{-1}(x) = cos(x)/x.
template <class T>
T j_any(int l, T x) {
  if (l == -1) return std::cos(x) / x;
  return sph_j_signed(l, x);
}

}  // namespace detail

/// Leading small-x behaviour x^l sqrt(pi) / (2^(l+1) Gamma(l + 3/2)),
/// which equals x^l / (2l+1)!!.
inline double small_x_leading(int l, double x) {
  if (l < 0) throw DomainError("small_x_leading: order must be >= 0");
  return std::pow(x, l) * std::sqrt(std::numbers::pi) /
         (std::pow(2.0, l + 1) * std::tgamma(l + 1.5));
}

/// Spherical Bessel function of the first kind j_l(x), l >= 0, x >= 0.
///
/// x < 1e-4: three-term power series.
/// x >= l + 2: upward three-term recursion from the closed forms of j_0, j_1.
/// otherwise: ratios j_m / j_{m-1} from a downward continued fraction started
/// at order l + max(20, ceil(1.5 l)), normalized by whichever of j_0, j_1 is
/// larger in magnitude.
inline double sph_j(int l, double x) {
  if (l < 0) throw DomainError("sph_j: order must be >= 0");
  if (x < 0.0 || std::isnan(x)) throw DomainError("sph_j: argument must be >= 0");
  if (x == 0.0) return l == 0 ? 1.0 : 0.0;
  return static_cast<double>(detail::sph_j_impl<detail::real>(l, x));
}

/// j_l extended to l = -1 via j_{-1}(x) = cos(x)/x, the analytic
/// continuation used by closed forms evaluated at their l = 0 boundary.
inline double sph_j_ext(int l, double x) {
  if (l == -1) {
    if (x == 0.0) throw DomainError("j_{-1} diverges at 0");
    return std::cos(x) / x;
  }
  return sph_j(l, x);
}

/// (-1)^l j_l(|x|) for x < 0, j_l(x) otherwise.
inline double j_parity_extend(int l, double x) {
  if (x < 0.0) {
    const double v = sph_j(l, -x);
    return (l % 2 == 0) ? v : -v;
  }
  return sph_j(l, x == 0.0 ? 0.0 : x);
}

/// Rule of thumb for the first zero of j_l: 4.75 + 1.05 l. It overestimates
/// at low l (the first zero of j_0 is pi).
inline double first_zero_estimate(int l) { return 4.75 + 1.05 * l; }

}  // namespace besselquad
