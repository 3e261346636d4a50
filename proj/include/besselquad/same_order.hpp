#pragma once

// K^n_l(x; alpha, beta) = int x^n j_l(alpha x) j_l(beta x) dx, alpha != beta.

#include <cmath>
#include <string>
#include <vector>

#include "besselquad/antiderivative.hpp"
#include "besselquad/errors.hpp"
#include "besselquad/sph_bessel.hpp"
#include "besselquad/squared.hpp"
#include "besselquad/trig_primitives.hpp"

namespace besselquad {

/// Relative degeneracy guard: |alpha - beta| < tau (|alpha| + |beta|).
inline constexpr double kDegeneracyGuard = 1e-6;

inline bool near_degenerate(double a, double b) {
  return std::abs(a - b) < kDegeneracyGuard * (std::abs(a) + std::abs(b));
}

namespace detail {

// int x^m cos(d x) dx for 0 < d. Under the degeneracy guard only the
// power-series route (m >= 0, |d x| <= 0.5) is used, with the divergent
// constant dropped.
inline real difference_cos_primitive(int m, real d, real x, bool degenerate,
                                     bool& used_series) {
  if (!degenerate) return cos_primitive(m, d, x);
  if (m >= 0 && std::abs(d * x) <= real(kSeriesThreshold)) {
    used_series = true;
    return scaled_Y_series(m, d, x, false);
  }
  throw NearDegenerate("|alpha - beta| below guard; no series for x^" +
                       std::to_string(m) + " cos((alpha-beta)x) at this x");
}

inline real difference_sin_primitive(int m, real d, real x, bool degenerate,
                                     bool& used_series) {
  if (!degenerate) return sin_primitive(m, d, x);
  if (m >= 0 && std::abs(d * x) <= real(kSeriesThreshold)) {
    used_series = true;
    return scaled_X_series(m, d, x, false);
  }
  throw NearDegenerate("|alpha - beta| below guard; no series for x^" +
                       std::to_string(m) + " sin((alpha-beta)x) at this x");
}

// K^n_0 for a > b > 0.
inline real eval_K_base(int n, real x, real a, real b, bool& used_series) {
  const bool degenerate = near_degenerate(static_cast<double>(a), static_cast<double>(b));
  const real diff = difference_cos_primitive(n - 2, a - b, x, degenerate, used_series);
  const real sum = cos_primitive(n - 2, a + b, x);
  return (diff - sum) / (2 * a * b);
}

inline real closed_K2_canonical(int l, real x, real a, real b) {
  const real ja = j_any(l, a * x), jb = j_any(l, b * x);
  const real jam = j_any(l - 1, a * x), jbm = j_any(l - 1, b * x);
  return x * x / (a * a - b * b) * (b * ja * jbm - a * jam * jb);
}

}  // namespace detail

/// K^2_l = x^2 / (alpha^2 - beta^2) [beta j_l(alpha x) j_{l-1}(beta x)
///                                   - alpha j_{l-1}(alpha x) j_l(beta x)].
inline AntiderivativeValue closed_K2(int l, double x, double alpha, double beta) {
  if (l < 0) throw DomainError("closed_K2: order must be >= 0");
  if (alpha == beta) throw DomainError("closed_K2: requires alpha != beta");
  if (alpha * alpha == beta * beta)
    throw DomainError("closed_K2: alpha^2 = beta^2 makes the prefactor singular");
  if (!(x > 0.0)) throw DomainError("closed_K2: argument must be > 0");
  return {static_cast<double>(detail::closed_K2_canonical(l, x, alpha, beta)),
          EvalPath::ClosedForm};
}

inline bool same_order_finite_at_zero(int n, int l) { return 2 * l + n > -1; }

namespace detail {

// a > b > 0.
inline real eval_K_impl(int n, int l, real x, real a, real b, EvalOptions opts,
                        EvalPath& path) {
  bool used_series = false;
  if (l == 0) {
    const real v = eval_K_base(n, x, a, b, used_series);
    path = used_series ? EvalPath::Series : EvalPath::Recursion;
    return v;
  }

  const int width = l + 1;
  std::vector<std::vector<char>> need(width, std::vector<char>(width, 0));
  std::vector<std::vector<char>> closed(width, std::vector<char>(width, 0));
  need[l][0] = 1;
  for (int ll = l; ll >= 1; --ll) {
    for (int i = 0; i <= l - ll; ++i) {
      if (!need[ll][i]) continue;
      const int m = n - 2 * i;
      if (opts.use_closed_forms && m == 2) {
        closed[ll][i] = 1;
        continue;
      }
      need[ll - 1][i] = 1;
      if ((m - 2) * (m + 2 * ll - 3) != 0) need[ll - 1][i + 1] = 1;
    }
  }

  std::vector<real> ja(l + 1), jb(l + 1);
  for (int ll = 0; ll <= l; ++ll) {
    ja[ll] = sph_j_impl(ll, a * x);
    jb[ll] = sph_j_impl(ll, b * x);
  }

  const real inv2ab = 1 / (2 * a * b);
  const real a2b2 = a * a + b * b;
  std::vector<std::vector<real>> val(width, std::vector<real>(width, 0));
  for (int ll = 0; ll <= l; ++ll) {
    for (int i = 0; i <= l - ll; ++i) {
      if (!need[ll][i]) continue;
      const int m = n - 2 * i;
      if (closed[ll][i]) {
        val[ll][i] = closed_K2_canonical(ll, x, a, b);
      } else if (ll == 0) {
        val[ll][i] = eval_K_base(m, x, a, b, used_series);
      } else {
        const real coef = real(m - 2) * real(m + 2 * ll - 3);
        real v = a2b2 * val[ll - 1][i];
        if (coef != 0) v += coef * val[ll - 1][i + 1];
        v += real(2 - m) * ipow(x, m - 1) * ja[ll - 1] * jb[ll - 1] -
             ipow(x, m) * (b * ja[ll - 1] * jb[ll] + a * ja[ll] * jb[ll - 1]);
        val[ll][i] = v * inv2ab;
      }
    }
  }
  path = closed[l][0] ? EvalPath::ClosedForm
                      : (used_series ? EvalPath::Series : EvalPath::Recursion);
  return val[l][0];
}

}  // namespace detail

/// K^n_l(x; alpha, beta) for x > 0, alpha != beta, both nonzero.
///
/// Signs are folded out with j_l(-y) = (-1)^l j_l(y) and the scales ordered
/// so the result is exactly symmetric. The table of nodes K^{n-2i}_{ll} is
/// evaluated bottom-up from the trigonometric base
///   K^m_0 = [int x^(m-2) cos((a-b)x) - int x^(m-2) cos((a+b)x)] / (2ab)
/// through
///   2ab K^m_ll = (a^2+b^2) K^m_{ll-1} + (m-2)(m+2ll-3) K^{m-2}_{ll-1}
///                + (2-m) x^(m-1) j_{ll-1}(ax) j_{ll-1}(bx)
///                - x^m [b j_{ll-1}(ax) j_ll(bx) + a j_ll(ax) j_{ll-1}(bx)].
inline AntiderivativeValue eval_K(int n, int l, double x, double alpha, double beta,
                                  EvalOptions opts = {}) {
  if (l < 0) throw DomainError("eval_K: order must be >= 0");
  if (!(x > 0.0)) throw DomainError("eval_K: argument must be > 0");
  if (alpha == 0.0 || beta == 0.0) throw DomainError("eval_K: scales must be nonzero");
  if (alpha == beta) throw DomainError("eval_K: alpha == beta, use eval_H_scaled");

  double sign = 1.0;
  if (alpha < 0.0) sign *= detail::sign_pow(l);
  if (beta < 0.0) sign *= detail::sign_pow(l);
  double a = std::abs(alpha);
  double b = std::abs(beta);
  if (a == b) {
    AntiderivativeValue h = eval_H_scaled(n, l, x, a, opts);
    h.value *= sign;
    return h;
  }
  if (a < b) std::swap(a, b);

  EvalPath path;
  const detail::real v = detail::eval_K_impl(n, l, x, a, b, opts, path);
  return {sign * static_cast<double>(v), path};
}

inline double product_integrand(int n, int k, int l, double alpha, double beta,
                                double x) {
  return detail::ipow(x, n) * j_parity_extend(k, alpha * x) *
         j_parity_extend(l, beta * x);
}

}  // namespace besselquad
