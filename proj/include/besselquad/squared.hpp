#pragma once

// H^n_l(x) = int x^n j_l(x)^2 dx and the scaled H^n_l(x; alpha).

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "besselquad/antiderivative.hpp"
#include "besselquad/errors.hpp"
#include "besselquad/sph_bessel.hpp"
#include "besselquad/trig_primitives.hpp"

namespace besselquad {

enum class SquaredClosedForm {
  H1,  // n = -1, l >= 1
  H2,  // n = 1 - 2l, l >= 1
  H3,  // n = 2
  H4,  // n = 4
  H5,  // n = 2l + 3
};

inline bool squared_finite_at_zero(int n, int l) { return 2 * l + n > -1; }

namespace detail {

inline real closed_H_impl(SquaredClosedForm kind, int l, real x) {
  const real jl = sph_j_impl(l, x);
  switch (kind) {
    case SquaredClosedForm::H1: {
      const real jm = sph_j_impl(l - 1, x);
      const real num = x * x * jm * jm - 2 * real(l) * x * jm * jl + (x * x - l) * jl * jl;
      return num / (2 * real(l) * real(l + 1));
    }
    case SquaredClosedForm::H2: {
      const real jm = sph_j_impl(l - 1, x);
      const real g = std::tgamma(real(l) + real(0.5));
      const real constant =
          std::numbers::pi_v<real> / (std::pow(real(4), real(l + 1)) * real(l) * g * g);
      return constant - ipow(x, 2 * (1 - l)) * (jm * jm + jl * jl) / (4 * real(l));
    }
    case SquaredClosedForm::H3: {
      const real jm = j_any(l - 1, x);
      const real jp = sph_j_impl(l + 1, x);
      return x * x * x / 2 * (jl * jl - jm * jp);
    }
    case SquaredClosedForm::H4: {
      const real jm = j_any(l - 1, x);
      const real x2 = x * x;
      const real ll = l;
      const real bracket = -(2 * ll + 3) * (4 * ll * ll + 2 * x2 - 1) * jl * jm +
                           x * (4 * ll * (ll + 1) + 2 * x2 - 3) * jm * jm +
                           x * (4 * ll * (ll + 2) + 2 * x2 + 3) * jl * jl;
      return x2 / 12 * bracket;
    }
    case SquaredClosedForm::H5: {
      const real jp = sph_j_impl(l + 1, x);
      return ipow(x, 2 * (l + 2)) / (4 * real(l + 1)) * (jl * jl + jp * jp);
    }
  }
  throw DomainError("closed_H: unknown closed form");
}

}  // namespace detail

inline AntiderivativeValue closed_H(SquaredClosedForm kind, int l, double x) {
  if (l < 0) throw DomainError("closed_H: order must be >= 0");
  if ((kind == SquaredClosedForm::H1 || kind == SquaredClosedForm::H2) && l < 1)
    throw DomainError("closed_H: H1 and H2 require l >= 1");
  if (!(x > 0.0)) throw DomainError("closed_H: argument must be > 0");
  return {static_cast<double>(detail::closed_H_impl(kind, l, x)), EvalPath::ClosedForm};
}

inline std::optional<SquaredClosedForm> match_squared_closed_form(int n, int l) {
  if (n == 2) return SquaredClosedForm::H3;
  if (n == 4) return SquaredClosedForm::H4;
  if (n == 2 * l + 3) return SquaredClosedForm::H5;
  if (l >= 1 && n == -1) return SquaredClosedForm::H1;
  if (l >= 1 && n == 1 - 2 * l) return SquaredClosedForm::H2;
  return std::nullopt;
}

namespace detail {

inline real eval_H_base_impl(int n, real x) {
  if (n == 1) {
    real s = 0, c = 0;
    si_ci(2 * x, s, c);
    return (std::log(x) - c) / 2;
  }
  real X = 0, Y = 0;
  trig_tail(n - 2, 2 * x, X, Y);
  return ipow(x, n - 1) / (2 * real(n - 1)) - Y / ipow(real(2), n);
}

inline real eval_H_impl(int n, int l, real x, EvalOptions opts, EvalPath& path) {
  path = EvalPath::Recursion;
  if (l == 0) return eval_H_base_impl(n, x);

  const int width = l + 1;
  // need[ll][i] for node H^{n-2i}_{ll}; closed[ll][i] marks closed-form nodes.
  std::vector<std::vector<char>> need(width, std::vector<char>(width, 0));
  std::vector<std::vector<char>> closed(width, std::vector<char>(width, 0));
  need[l][0] = 1;
  for (int ll = l; ll >= 1; --ll) {
    for (int i = 0; i <= l - ll; ++i) {
      if (!need[ll][i]) continue;
      const int m = n - 2 * i;
      if (opts.use_closed_forms && match_squared_closed_form(m, ll)) {
        closed[ll][i] = 1;
        continue;
      }
      need[ll - 1][i] = 1;
      if ((m - 2) * (2 * ll + m - 3) != 0) need[ll - 1][i + 1] = 1;
    }
  }

  std::vector<real> j(l + 1);
  for (int ll = 0; ll <= l; ++ll) j[ll] = sph_j_impl(ll, x);

  std::vector<std::vector<real>> val(width, std::vector<real>(width, 0));
  for (int ll = 0; ll <= l; ++ll) {
    for (int i = 0; i <= l - ll; ++i) {
      if (!need[ll][i]) continue;
      const int m = n - 2 * i;
      if (closed[ll][i]) {
        val[ll][i] = closed_H_impl(*match_squared_closed_form(m, ll), ll, x);
      } else if (ll == 0) {
        val[ll][i] = eval_H_base_impl(m, x);
      } else {
        const real jm = j[ll - 1];
        const real coef = real(0.5) * (m - 2) * (2 * ll + m - 3);
        real v = val[ll - 1][i];
        if (coef != 0) v += coef * val[ll - 1][i + 1];
        v += (1 - real(0.5) * m) * ipow(x, m - 1) * jm * jm - ipow(x, m) * jm * j[ll];
        val[ll][i] = v;
      }
    }
  }
  if (closed[l][0]) path = EvalPath::ClosedForm;
  return val[l][0];
}

}  // namespace detail

/// H^n_0(x): x^(n-1) / (2(n-1)) - 2^-n Y_{n-2}(2x), or (ln x - Ci(2x)) / 2
/// when n = 1. Y_{n-2} takes the vanishing-at-infinity constant for n <= 1.
inline double eval_H_base(int n, double x) {
  if (!(x > 0.0)) throw DomainError("eval_H_base: argument must be > 0");
  return static_cast<double>(detail::eval_H_base_impl(n, x));
}

/// H^n_l(x) for x > 0.
///
/// Lowers l with
///   H^n_l = H^n_{l-1} + (n-2)(2l+n-3)/2 H^{n-2}_{l-1}
///           + (1 - n/2) x^(n-1) j_{l-1}^2 - x^n j_{l-1} j_l,
/// over a table of (order, n - 2i) nodes. Nodes whose coefficient vanishes are
/// never visited, and with closed forms enabled any node of order >= 1 that
/// matches H1..H5 is evaluated directly and ends its branch.
inline AntiderivativeValue eval_H(int n, int l, double x, EvalOptions opts = {}) {
  if (l < 0) throw DomainError("eval_H: order must be >= 0");
  if (!(x > 0.0)) throw DomainError("eval_H: argument must be > 0");
  EvalPath path;
  const detail::real v = detail::eval_H_impl(n, l, x, opts, path);
  return {static_cast<double>(v), path};
}

/// H^n_l(x; alpha) = |alpha|^(-n-1) H^n_l(|alpha| x). j_l(alpha x)^2 is even in
/// alpha, so only the magnitude enters.
inline AntiderivativeValue eval_H_scaled(int n, int l, double x, double alpha,
                                         EvalOptions opts = {}) {
  using detail::real;
  if (l < 0) throw DomainError("eval_H_scaled: order must be >= 0");
  if (alpha == 0.0) throw DomainError("eval_H_scaled: alpha must be nonzero");
  if (!(x > 0.0)) throw DomainError("eval_H_scaled: argument must be > 0");
  const real a = std::abs(real(alpha));
  EvalPath path;
  const real v = detail::eval_H_impl(n, l, a * real(x), opts, path);
  return {static_cast<double>(v / detail::ipow(a, n + 1)), path};
}

inline double squared_integrand(int n, int l, double alpha, double x) {
  const double j = j_parity_extend(l, alpha * x);
  return detail::ipow(x, n) * j * j;
}

}  // namespace besselquad
