#pragma once

// L^n_{kl}(x; alpha, beta) = int x^n j_k(alpha x) j_l(beta x) dx.

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <tuple>
#include <utility>

#include "besselquad/antiderivative.hpp"
#include "besselquad/errors.hpp"
#include "besselquad/same_order.hpp"
#include "besselquad/sph_bessel.hpp"
#include "besselquad/squared.hpp"
#include "besselquad/trig_primitives.hpp"

namespace besselquad {

enum class MixedClosedForm {
  L1,  // n = 0, k != l
  L2,  // n = -1, |k - l| != 1, k + l > 0
  L3,  // n = 1 - k - l, k + l > 0
  L4,  // n = l - k + 2
  L5,  // n = k + l + 3
};

inline bool mixed_finite_at_zero(int n, int k, int l) { return k + l + n > -1; }

namespace detail {

struct MixedContext {
  bool used_series = false;
};

// L^n_{01}(x; a, b) for a, b > 0, a != b.
inline real base_L01_positive(int n, real x, real a, real b, MixedContext& ctx) {
  const bool degenerate = near_degenerate(static_cast<double>(a), static_cast<double>(b));
  const real d = a - b;
  const real s = a + b;
  const real cos_part = difference_cos_primitive(n - 3, d, x, degenerate, ctx.used_series) -
                        cos_primitive(n - 3, s, x);
  const real sin_part = difference_sin_primitive(n - 2, d, x, degenerate, ctx.used_series) +
                        sin_primitive(n - 2, s, x);
  return cos_part / (2 * a * b * b) - sin_part / (2 * a * b);
}

// K^n_l for any distinct positive scales.
inline real K_positive(int n, int l, real x, real a, real b, EvalOptions opts,
                       MixedContext& ctx) {
  if (a < b) std::swap(a, b);
  EvalPath path;
  const real v = eval_K_impl(n, l, x, a, b, opts, path);
  if (path == EvalPath::Series) ctx.used_series = true;
  return v;
}

}  // namespace detail

/// L^n_{01}(x; alpha, beta) from the four trig primitives at (alpha -/+ beta) x.
inline AntiderivativeValue base_L01(int n, double x, double alpha, double beta) {
  if (!(x > 0.0)) throw DomainError("base_L01: argument must be > 0");
  if (alpha == 0.0 || beta == 0.0) throw DomainError("base_L01: scales must be nonzero");
  const double a = std::abs(alpha), b = std::abs(beta);
  if (a == b) throw DomainError("base_L01: |alpha| == |beta|, use the equal-argument path");
  detail::MixedContext ctx;
  double v = static_cast<double>(detail::base_L01_positive(n, x, a, b, ctx));
  if (beta < 0.0) v = -v;
  return {v, ctx.used_series ? EvalPath::Series : EvalPath::Recursion};
}

/// L^n_{l-1,l}(x; alpha, beta) = [x^(n+1) j_{l-1}(alpha x) j_l(beta x)
///     + alpha K^{n+1}_l - beta K^{n+1}_{l-1}] / (n - 1), n != 1.
inline AntiderivativeValue adjacent_closure(int n, int l, double x, double alpha,
                                            double beta, EvalOptions opts = {}) {
  if (n == 1) throw DomainError("adjacent_closure: n = 1 divides by zero");
  if (l < 1) throw DomainError("adjacent_closure: requires l >= 1");
  if (!(x > 0.0)) throw DomainError("adjacent_closure: argument must be > 0");
  if (alpha == beta) throw DomainError("adjacent_closure: requires alpha != beta");
  const AntiderivativeValue kl = eval_K(n + 1, l, x, alpha, beta, opts);
  const AntiderivativeValue km = eval_K(n + 1, l - 1, x, alpha, beta, opts);
  const double boundary = detail::ipow(x, n + 1) * j_parity_extend(l - 1, alpha * x) *
                          j_parity_extend(l, beta * x);
  const bool series = kl.path == EvalPath::Series || km.path == EvalPath::Series;
  return {(boundary + alpha * kl.value - beta * km.value) / (n - 1.0),
          series ? EvalPath::Series : EvalPath::Recursion};
}

namespace detail {

inline real closed_L_impl(MixedClosedForm kind, int k, int l, real x) {
  const real jk = sph_j_impl(k, x), jl = sph_j_impl(l, x);
  switch (kind) {
    case MixedClosedForm::L1: {
      const real denom = real(k) * (k + 1) - real(l) * (l + 1);
      return x / denom * (x * (j_any(k - 1, x) * jl - jk * j_any(l - 1, x)) +
                          real(l - k) * jk * jl);
    }
    case MixedClosedForm::L2: {
      const real kl = k + l;
      const real p = 1 + k - l;
      const real q = 1 + l - k;
      const real jk1 = sph_j_impl(k + 1, x), jl1 = sph_j_impl(l + 1, x);
      return jk * jl / kl - x * jk1 * jl / (p * kl) - x * jk * jl1 / (q * kl) +
             2 * x * x * (jk1 * jl1 + jk * jl) / (kl * (2 + kl) * p * q);
    }
    case MixedClosedForm::L3: {
      const real kl = k + l;
      const real constant =
          std::numbers::pi_v<real> / (std::pow(real(2), kl + 1) * kl *
                                      std::tgamma(real(k) + real(0.5)) *
                                      std::tgamma(real(l) + real(0.5)));
      return constant -
             ipow(x, 2 - k - l) * (j_any(k - 1, x) * j_any(l - 1, x) + jk * jl) / (2 * kl);
    }
    case MixedClosedForm::L4:
      return ipow(x, l - k + 3) / (2 * real(k - l - 1)) *
             (j_any(k - 1, x) * sph_j_impl(l + 1, x) - jk * jl);
    case MixedClosedForm::L5:
      return ipow(x, k + l + 4) / (2 * real(k + l + 2)) *
             (sph_j_impl(k + 1, x) * sph_j_impl(l + 1, x) + jk * jl);
  }
  throw DomainError("closed_L: unknown closed form");
}

}  // namespace detail

inline AntiderivativeValue closed_L(MixedClosedForm kind, int k, int l, double x) {
  if (k < 0 || l < 0) throw DomainError("closed_L: orders must be >= 0");
  if (!(x > 0.0)) throw DomainError("closed_L: argument must be > 0");
  switch (kind) {
    case MixedClosedForm::L1:
      if (k == l) throw DomainError("closed_L: L1 requires k != l");
      break;
    case MixedClosedForm::L2:
      if (std::abs(k - l) == 1 || k + l == 0)
        throw DomainError("closed_L: L2 requires |k - l| != 1 and k + l > 0");
      break;
    case MixedClosedForm::L3:
      if (k + l == 0) throw DomainError("closed_L: L3 requires k + l > 0");
      break;
    case MixedClosedForm::L4:
      if (k == l + 1) throw DomainError("closed_L: L4 requires k != l + 1");
      break;
    case MixedClosedForm::L5:
      break;
  }
  return {static_cast<double>(detail::closed_L_impl(kind, k, l, x)), EvalPath::ClosedForm};
}

/// First known closed form valid at (n, k, l) with k <= l.
inline std::optional<MixedClosedForm> match_mixed_closed_form(int n, int k, int l) {
  if (n == 0 && k != l) return MixedClosedForm::L1;
  if (n == -1 && std::abs(k - l) != 1 && k + l > 0) return MixedClosedForm::L2;
  if (k + l > 0 && n == 1 - k - l) return MixedClosedForm::L3;
  if (n == l - k + 2 && k != l + 1) return MixedClosedForm::L4;
  if (n == k + l + 3) return MixedClosedForm::L5;
  return std::nullopt;
}

namespace detail {

inline real base_L01_equal_impl(int n, real x) {
  const real power = (n == 2) ? std::log(x) / 2 : ipow(x, n - 2) / (2 * real(n - 2));
  real X3 = 0, Y3 = 0, X2 = 0, Y2 = 0;
  trig_tail(n - 3, 2 * x, X3, Y3);
  trig_tail(n - 2, 2 * x, X2, Y2);
  return power - Y3 / ipow(real(2), n - 1) - X2 / ipow(real(2), n);
}

inline real eval_L_equal_impl(int n, int k, int l, real x, EvalOptions opts,
                              std::map<std::tuple<int, int, int>, real>& memo,
                              bool& top_closed, bool top) {
  if (k > l) std::swap(k, l);
  const auto key = std::make_tuple(n, k, l);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  real v;
  EvalPath unused;
  if (k == l) {
    v = eval_H_impl(n, k, x, opts, unused);
  } else if (auto cf = opts.use_closed_forms ? match_mixed_closed_form(n, k, l)
                                             : std::nullopt) {
    v = closed_L_impl(*cf, k, l, x);
    if (top) top_closed = true;
  } else if (l == k + 1) {
    const real jk = sph_j_impl(k, x);
    v = (k + real(0.5) * n) * eval_H_impl(n - 1, k, x, opts, unused) -
        real(0.5) * ipow(x, n) * jk * jk;
  } else {
    v = real(2 * l - 1) * eval_L_equal_impl(n - 1, k, l - 1, x, opts, memo, top_closed, false) -
        eval_L_equal_impl(n, k, l - 2, x, opts, memo, top_closed, false);
  }
  memo[key] = v;
  return v;
}

inline real eval_L_equal(int n, int k, int l, real x, EvalOptions opts, EvalPath& path) {
  std::map<std::tuple<int, int, int>, real> memo;
  bool top_closed = false;
  const real v = eval_L_equal_impl(n, k, l, x, opts, memo, top_closed, true);
  path = top_closed ? EvalPath::ClosedForm : EvalPath::Recursion;
  return v;
}

}  // namespace detail

/// Equal-argument L^n_{01}(x) = int x^(n-3)/2 dx - 2^(1-n) Y_{n-3}(2x)
/// - 2^-n X_{n-2}(2x); the power integral becomes ln(x)/2 at n = 2.
inline AntiderivativeValue base_L01_equal_args(int n, double x) {
  if (!(x > 0.0)) throw DomainError("base_L01_equal_args: argument must be > 0");
  return {static_cast<double>(detail::base_L01_equal_impl(n, x)), EvalPath::Recursion};
}

/// L^n_{kl}(x) = int x^n j_k(x) j_l(x) dx for x > 0.
///
/// Known closed forms first (L1..L5), then the adjacent-order rule
/// L^n_{l-1,l} = (l + n/2 - 1) H^{n-1}_{l-1} - x^n j_{l-1}^2 / 2, otherwise the
/// three-term order-lowering relation with beta = 1; k = l is H^n_l.
inline AntiderivativeValue eval_L_equal_args(int n, int k, int l, double x,
                                             EvalOptions opts = {}) {
  if (k < 0 || l < 0) throw DomainError("eval_L_equal_args: orders must be >= 0");
  if (!(x > 0.0)) throw DomainError("eval_L_equal_args: argument must be > 0");
  EvalPath path;
  const detail::real v = detail::eval_L_equal(n, k, l, x, opts, path);
  return {static_cast<double>(v), path};
}

namespace detail {

// General-scale recursion state: orders k < l with scales (a, b) on (j_k, j_l).
struct MixedSolver {
  real x;
  EvalOptions opts;
  MixedContext ctx;
  std::map<std::tuple<int, int, int, real, real>, real> memo;

  real L(int n, int k, int l, real a, real b) {
    if (k > l) {
      std::swap(k, l);
      std::swap(a, b);
    }
    const auto key = std::make_tuple(n, k, l, a, b);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    real v;
    if (k == l) {
      v = K_positive(n, k, x, a, b, opts, ctx);
    } else if (k == 0 && l == 1) {
      v = base_L01_positive(n, x, a, b, ctx);
    } else if (l == k + 1 && n != 1) {
      const real boundary = ipow(x, n + 1) * sph_j_impl(k, a * x) * sph_j_impl(l, b * x);
      v = (boundary + a * K_positive(n + 1, l, x, a, b, opts, ctx) -
           b * K_positive(n + 1, k, x, a, b, opts, ctx)) /
          real(n - 1);
    } else {
      // Covers l >= k + 2 and the n = 1 adjacent ladder, whose second term
      // L^1_{k,k-1}(a, b) = L^1_{k-1,k}(b, a) is adjacent again.
      v = real(2 * l - 1) / b * L(n - 1, k, l - 1, a, b) - L(n, k, l - 2, a, b);
    }
    memo[key] = v;
    return v;
  }
};

}  // namespace detail

/// L^n_{kl}(x; alpha, beta) for x > 0 and nonzero scales.
///
/// Parity signs are folded out and orders put in k <= l order. k = l goes to
/// K (or H when the scales coincide); equal scales go to the equal-argument
/// path via L^n_{kl}(x; a, a) = a^(-1-n) L^n_{kl}(a x). Otherwise the larger
/// order is lowered with
///   L^n_{kl} = (2l - 1)/beta L^{n-1}_{k,l-1} - L^n_{k,l-2}
/// until l = k (K), (k, l) = (0, 1) (trig base), or l = k + 1 (adjacent
/// closure for n != 1; for n = 1 the same relation keeps lowering both orders
/// down to L^1_{01}).
inline AntiderivativeValue eval_L(int n, int k, int l, double x, double alpha,
                                  double beta, EvalOptions opts = {}) {
  using detail::real;
  if (k < 0 || l < 0) throw DomainError("eval_L: orders must be >= 0");
  if (!(x > 0.0)) throw DomainError("eval_L: argument must be > 0");
  if (alpha == 0.0 || beta == 0.0) throw DomainError("eval_L: scales must be nonzero");
  real sign = 1;
  if (alpha < 0.0) sign *= detail::sign_pow(k);
  if (beta < 0.0) sign *= detail::sign_pow(l);
  real a = std::abs(real(alpha));
  real b = std::abs(real(beta));
  if (k > l) {
    std::swap(k, l);
    std::swap(a, b);
  }
  const real xr = x;
  EvalPath path = EvalPath::Recursion;
  real v;
  if (a == b) {
    if (k == l)
      v = detail::eval_H_impl(n, k, a * xr, opts, path);
    else
      v = detail::eval_L_equal(n, k, l, a * xr, opts, path);
    v /= detail::ipow(a, n + 1);
  } else if (k == l) {
    v = detail::eval_K_impl(n, k, xr, std::max(a, b), std::min(a, b), opts, path);
  } else {
    detail::MixedSolver solver{xr, opts, {}, {}};
    v = solver.L(n, k, l, a, b);
    path = solver.ctx.used_series ? EvalPath::Series : EvalPath::Recursion;
  }
  return {static_cast<double>(sign * v), path};
}

/// Relative residual of
///   (a^2 - b^2) L^2_{kl} + [l(l+1) - k(k+1)] L^0_{kl}
///     = b x^2 j_k(ax) j_{l-1}(bx) - a x^2 j_{k-1}(ax) j_l(bx) + (k - l) x j_k(ax) j_l(bx)
/// as definite integrals over [lo, hi]: |LHS - RHS| / max(1, |RHS|).
inline double identity_Lresult_residual(int k, int l, double alpha, double beta,
                                        double lo, double hi, EvalOptions opts = {}) {
  if (!(lo > 0.0 && lo < hi)) throw DomainError("identity_Lresult_residual: need 0 < lo < hi");
  if (k < 0 || l < 0) throw DomainError("identity_Lresult_residual: orders must be >= 0");
  const double c2 = alpha * alpha - beta * beta;
  const double c0 = l * (l + 1.0) - k * (k + 1.0);
  if (c2 == 0.0 && c0 == 0.0) return 0.0;
  auto boundary = [&](double x) {
    using detail::j_any;
    using detail::real;
    const real ax = real(alpha) * x, bx = real(beta) * x;
    return static_cast<double>(
        beta * real(x) * x * j_any(k, ax) * j_any(l - 1, bx) -
        alpha * real(x) * x * j_any(k - 1, ax) * j_any(l, bx) +
        real(k - l) * x * j_any(k, ax) * j_any(l, bx));
  };
  auto definite = [&](int n) {
    return eval_L(n, k, l, hi, alpha, beta, opts).value -
           eval_L(n, k, l, lo, alpha, beta, opts).value;
  };
  double lhs = 0.0;
  if (c2 != 0.0) lhs += c2 * definite(2);
  if (c0 != 0.0) lhs += c0 * definite(0);
  const double rhs = boundary(hi) - boundary(lo);
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

}  // namespace besselquad
