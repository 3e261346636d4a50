#pragma once

// I^n_l(x) = int x^n j_l(x) dx and the scaled I^n_l(x; alpha).

#include <cmath>
#include <map>
#include <numbers>
#include <utility>

#include "besselquad/antiderivative.hpp"
#include "besselquad/errors.hpp"
#include "besselquad/sph_bessel.hpp"
#include "besselquad/trig_primitives.hpp"

namespace besselquad {

enum class SingleClosedForm {
  I1,  // n = l + 2
  I2,  // n = l + 4
  I3,  // n = 1 - l, l >= 1
};

/// The finite-at-zero condition for I^n_l: l + n > -1.
inline bool single_finite_at_zero(int n, int l) { return l + n > -1; }

/// The first-order recursion truncates when l + n is odd and
/// 1 - l <= n <= 1 + l; it then stops at step i = (l + n - 1) / 2.
inline bool single_recursion_truncates(int n, int l) {
  return ((l + n) % 2 != 0) && (1 - l <= n) && (n <= 1 + l);
}

namespace detail {

inline real closed_I_impl(SingleClosedForm kind, int l, real x) {
  switch (kind) {
    case SingleClosedForm::I1:
      return ipow(x, 2 + l) * sph_j_impl(l + 1, x);
    case SingleClosedForm::I2:
      return ipow(x, 3 + l) *
             (real(2 * l + 3) * sph_j_impl(l + 2, x) - x * sph_j_impl(l + 3, x));
    case SingleClosedForm::I3: {
      const real constant = std::sqrt(std::numbers::pi_v<real>) *
                            std::pow(real(2), real(-l)) / std::tgamma(real(l) + real(0.5));
      return constant - ipow(x, 1 - l) * sph_j_impl(l - 1, x);
    }
  }
  throw DomainError("closed_I: unknown closed form");
}

}  // namespace detail

inline AntiderivativeValue closed_I(SingleClosedForm kind, int l, double x) {
  if (l < 0) throw DomainError("closed_I: order must be >= 0");
  if (kind == SingleClosedForm::I3 && l < 1)
    throw DomainError("closed_I: I3 requires l >= 1");
  if (!(x > 0.0)) {
    if (x == 0.0 && kind != SingleClosedForm::I3)
      return {0.0, EvalPath::ClosedForm};
    throw DomainError("closed_I: argument must be > 0");
  }
  return {static_cast<double>(detail::closed_I_impl(kind, l, x)), EvalPath::ClosedForm};
}

/// Which known closed form, if any, matches (n, l).
inline bool match_single_closed_form(int n, int l, SingleClosedForm& kind) {
  if (n == l + 2) { kind = SingleClosedForm::I1; return true; }
  if (n == l + 4) { kind = SingleClosedForm::I2; return true; }
  if (l >= 1 && n == 1 - l) { kind = SingleClosedForm::I3; return true; }
  return false;
}

namespace detail {

inline real eval_I_impl(int n, int l, real x, EvalOptions opts, EvalPath& path) {
  if (opts.use_closed_forms) {
    SingleClosedForm kind;
    if (match_single_closed_form(n, l, kind)) {
      path = EvalPath::ClosedForm;
      return closed_I_impl(kind, l, x);
    }
  }
  path = EvalPath::Recursion;
  real value = 0;
  real coef = 1;
  for (int i = 0; i < l; ++i) {
    const int cl = l - i;
    const int cn = n - i;
    value -= coef * ipow(x, cn) * sph_j_impl(cl - 1, x);
    const int c = cl + cn - 1;
    if (c == 0) return value;
    coef *= c;
  }
  return value + coef * X_std(n - l - 1, x);
}

}  // namespace detail

/// I^n_l(x) for x > 0.
///
/// Walks (l - i, n - i) through I^n_l = (l + n - 1) I^{n-1}_{l-1} - x^n j_{l-1},
/// accumulating the boundary terms, and ends at I^{n-l}_0 = X_{n-l-1} unless a
/// coefficient vanishes first.
inline AntiderivativeValue eval_I(int n, int l, double x, EvalOptions opts = {}) {
  if (l < 0) throw DomainError("eval_I: order must be >= 0");
  if (!(x > 0.0)) throw DomainError("eval_I: argument must be > 0");
  EvalPath path;
  const detail::real v = detail::eval_I_impl(n, l, x, opts, path);
  return {static_cast<double>(v), path};
}

/// I^n_l(x) through the three-term order-lowering relation
/// I^n_l = (2l - 1) I^{n-1}_{l-1} - I^n_{l-2}, with bases I^m_0 = X_{m-1} and
/// I^m_1 = m X_{m-2} - x^m j_0. This path never uses the first-order
/// truncation, so it serves as an independent route for the same integral.
inline AntiderivativeValue eval_I_three_term(int n, int l, double x) {
  using detail::real;
  if (l < 0) throw DomainError("eval_I_three_term: order must be >= 0");
  if (!(x > 0.0)) throw DomainError("eval_I_three_term: argument must be > 0");
  const real xr = x;
  std::map<std::pair<int, int>, real> memo;
  const real j0 = detail::sph_j_impl(0, xr);
  auto base = [&](int m, int ll) -> real {
    if (ll == 0) return detail::X_std(m - 1, xr);
    return m * detail::X_std(m - 2, xr) - detail::ipow(xr, m) * j0;
  };
  // Bottom-up over orders; at order ll the needed exponents are
  // n - (l - ll) + 2t for t >= 0.
  for (int ll = 0; ll <= l; ++ll) {
    const int depth = l - ll;
    for (int t = 0; 2 * t <= depth; ++t) {
      const int m = n - depth + 2 * t;
      real v;
      if (ll <= 1)
        v = base(m, ll);
      else
        v = real(2 * ll - 1) * memo.at({ll - 1, m - 1}) - memo.at({ll - 2, m});
      memo[{ll, m}] = v;
    }
  }
  return {static_cast<double>(memo.at({l, n})), EvalPath::Recursion};
}

/// I^n_l(x; alpha) = int x^n j_l(alpha x) dx = |alpha|^(-n-1) I^n_l(|alpha| x),
/// with (-1)^l folded in for alpha < 0.
inline AntiderivativeValue eval_I_scaled(int n, int l, double x, double alpha,
                                         EvalOptions opts = {}) {
  using detail::real;
  if (l < 0) throw DomainError("eval_I_scaled: order must be >= 0");
  if (alpha == 0.0) throw DomainError("eval_I_scaled: alpha must be nonzero");
  if (!(x > 0.0)) throw DomainError("eval_I_scaled: argument must be > 0");
  const real a = std::abs(real(alpha));
  EvalPath path;
  real v = detail::eval_I_impl(n, l, a * real(x), opts, path);
  if (alpha < 0.0) v *= detail::sign_pow(l);
  return {static_cast<double>(v / detail::ipow(a, n + 1)), path};
}

inline double single_integrand(int n, int l, double alpha, double x) {
  return detail::ipow(x, n) * j_parity_extend(l, alpha * x);
}

}  // namespace besselquad
