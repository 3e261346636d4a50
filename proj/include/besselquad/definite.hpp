#pragma once

// Definite integrals of the four families with strategy selection between
// the recursion engines and adaptive quadrature.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "besselquad/antiderivative.hpp"
#include "besselquad/errors.hpp"
#include "besselquad/mixed_order.hpp"
#include "besselquad/quadrature.hpp"
#include "besselquad/same_order.hpp"
#include "besselquad/single.hpp"
#include "besselquad/sph_bessel.hpp"
#include "besselquad/squared.hpp"

namespace besselquad {

/// I: x^n j_l(alpha x); H: x^n j_l(alpha x)^2; K: x^n j_l(alpha x) j_l(beta x);
/// L: x^n j_k(alpha x) j_l(beta x).
enum class Family { I, H, K, L };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::I: return "I";
    case Family::H: return "H";
    case Family::K: return "K";
    case Family::L: return "L";
  }
  return "?";
}

struct IntegralSpec {
  Family family = Family::I;
  int n = 0;
  int k = 0;  // L only
  int l = 0;
  double alpha = 1.0;
  double beta = 1.0;  // K and L only

  static IntegralSpec single(int n, int l, double alpha) {
    return {Family::I, n, l, l, alpha, alpha};
  }
  static IntegralSpec squared(int n, int l, double alpha) {
    return {Family::H, n, l, l, alpha, alpha};
  }
  static IntegralSpec same_order(int n, int l, double alpha, double beta) {
    return {Family::K, n, l, l, alpha, beta};
  }
  static IntegralSpec mixed(int n, int k, int l, double alpha, double beta) {
    return {Family::L, n, k, l, alpha, beta};
  }

  int max_order() const { return family == Family::L ? std::max(k, l) : l; }

  double min_scale() const {
    if (family == Family::I || family == Family::H) return std::abs(alpha);
    return std::min(std::abs(alpha), std::abs(beta));
  }

  double max_scale() const {
    if (family == Family::I || family == Family::H) return std::abs(alpha);
    return std::max(std::abs(alpha), std::abs(beta));
  }
};

inline void validate(const IntegralSpec& s) {
  if (s.l < 0 || s.k < 0) throw DomainError("orders must be >= 0");
  if (s.alpha == 0.0) throw DomainError("alpha must be nonzero");
  if ((s.family == Family::K || s.family == Family::L) && s.beta == 0.0)
    throw DomainError("beta must be nonzero");
}

/// Finite-at-zero condition of the family; returns the violated condition
/// in `condition` when false.
inline bool finite_at_zero(const IntegralSpec& s, std::string* condition = nullptr) {
  bool ok = true;
  std::string what;
  switch (s.family) {
    case Family::I: ok = single_finite_at_zero(s.n, s.l); what = "l + n > -1"; break;
    case Family::H: ok = squared_finite_at_zero(s.n, s.l); what = "2l + n > -1"; break;
    case Family::K: ok = same_order_finite_at_zero(s.n, s.l); what = "2l + n > -1"; break;
    case Family::L: ok = mixed_finite_at_zero(s.n, s.k, s.l); what = "k + l + n > -1"; break;
  }
  if (!ok && condition) *condition = what;
  return ok;
}

inline double integrand(const IntegralSpec& s, double x) {
  switch (s.family) {
    case Family::I: return single_integrand(s.n, s.l, s.alpha, x);
    case Family::H: return squared_integrand(s.n, s.l, s.alpha, x);
    case Family::K: return product_integrand(s.n, s.l, s.l, s.alpha, s.beta, x);
    case Family::L: return product_integrand(s.n, s.k, s.l, s.alpha, s.beta, x);
  }
  return 0.0;
}

/// Antiderivative of the family at x > 0. K with alpha == beta is H.
inline AntiderivativeValue antiderivative(const IntegralSpec& s, double x,
                                          EvalOptions opts = {}) {
  switch (s.family) {
    case Family::I: return eval_I_scaled(s.n, s.l, x, s.alpha, opts);
    case Family::H: return eval_H_scaled(s.n, s.l, x, s.alpha, opts);
    case Family::K:
      if (s.alpha == s.beta) return eval_H_scaled(s.n, s.l, x, s.alpha, opts);
      return eval_K(s.n, s.l, x, s.alpha, s.beta, opts);
    case Family::L: return eval_L(s.n, s.k, s.l, x, s.alpha, s.beta, opts);
  }
  throw DomainError("unknown family");
}

enum class StrategyKind { ClosedForm, Recursion, Quadrature, Series };

inline std::string_view to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::ClosedForm: return "closed_form";
    case StrategyKind::Recursion: return "recursion";
    case StrategyKind::Quadrature: return "quadrature";
    case StrategyKind::Series: return "series";
  }
  return "unknown";
}

struct Strategy {
  StrategyKind kind = StrategyKind::Recursion;
  std::string reason;
  double threshold_x = 0.0;
  // When the interval straddles threshold_x: [a, split] by quadrature and
  // [split, b] by the analytic path.
  bool split = false;
  double split_at = 0.0;

  std::string label() const {
    if (split) return std::string("quadrature+") + std::string(to_string(kind));
    return std::string(to_string(kind));
  }
};

/// Argument below which the recursion engines give way to quadrature: the
/// first-zero estimate of the largest order, mapped through the smallest
/// scale, times c_switch.
inline double quadrature_threshold(const IntegralSpec& s, double c_switch = 1.0) {
  return c_switch * first_zero_estimate(s.max_order()) / s.min_scale();
}

inline Strategy choose_strategy(const IntegralSpec& s, double a, double b,
                                double c_switch = 1.0) {
  Strategy st;
  st.threshold_x = quadrature_threshold(s, c_switch);
  if (b <= st.threshold_x) {
    st.kind = StrategyKind::Quadrature;
    st.reason = "interval lies below the first-zero threshold";
  } else if (a >= st.threshold_x) {
    st.kind = StrategyKind::Recursion;
    st.reason = "interval lies above the first-zero threshold";
  } else {
    st.kind = StrategyKind::Recursion;
    st.split = true;
    st.split_at = st.threshold_x;
    st.reason = "interval straddles the first-zero threshold";
  }
  return st;
}

enum class StrategyMode { Auto, Recursion, Quadrature };

struct DefiniteOptions {
  StrategyMode mode = StrategyMode::Auto;
  double tol = 1e-10;  // absolute and relative, for the quadrature parts
  double c_switch = 1.0;
  EvalOptions eval;
};

struct DefiniteResult {
  double value = 0.0;
  double abs_error_est = 0.0;
  Strategy strategy;
  std::size_t evaluations = 0;
  bool converged = true;
};

inline QuadratureOptions oracle_options(const IntegralSpec& s, double tol) {
  QuadratureOptions q;
  q.abs_tol = tol;
  q.rel_tol = tol;
  q.max_initial_width = std::numbers::pi / s.max_scale();
  return q;
}

inline QuadratureResult quadrature_integral(const IntegralSpec& s, double a, double b,
                                            double tol = 1e-10) {
  return adaptive_quad([&](double x) { return integrand(s, x); }, a, b,
                       oracle_options(s, tol));
}

namespace detail {

inline StrategyKind kind_from_path(EvalPath p) {
  switch (p) {
    case EvalPath::ClosedForm: return StrategyKind::ClosedForm;
    case EvalPath::Series: return StrategyKind::Series;
    case EvalPath::Recursion: return StrategyKind::Recursion;
  }
  return StrategyKind::Recursion;
}

inline double analytic_difference(const IntegralSpec& s, double lo, double hi,
                                  EvalOptions opts, StrategyKind& kind) {
  const AntiderivativeValue upper = antiderivative(s, hi, opts);
  const AntiderivativeValue lower = antiderivative(s, lo, opts);
  kind = kind_from_path(upper.path);
  if (lower.path == EvalPath::Series) kind = StrategyKind::Series;
  return upper.value - lower.value;
}

}  // namespace detail

/// int_a^b of the family's integrand, 0 <= a < b.
///
/// Auto: quadrature below the first-zero threshold, antiderivative
/// differences above it, split at the threshold when straddling; falls back
/// to quadrature on NearDegenerate. Recursion: antiderivative differences
/// throughout, except that a lower limit of 0 is reached by quadrature up to
/// min(b, threshold) since the recursion cannot be evaluated at x = 0.
/// Quadrature: the oracle over [a, b].
inline DefiniteResult definite_integral(const IntegralSpec& s, double a, double b,
                                        const DefiniteOptions& opts = {}) {
  validate(s);
  if (!(a < b)) throw DomainError("definite_integral: requires a < b");
  if (a < 0.0) throw DomainError("definite_integral: requires a >= 0");
  if (a == 0.0) {
    std::string cond;
    if (!finite_at_zero(s, &cond))
      throw DomainError("lower limit 0 requires " + cond);
  }

  DefiniteResult out;
  auto run_quadrature = [&](double lo, double hi) {
    const QuadratureResult q = quadrature_integral(s, lo, hi, opts.tol);
    out.value += q.value;
    out.abs_error_est += q.error_estimate;
    out.evaluations += q.evaluations;
    out.converged = out.converged && q.converged;
  };

  if (opts.mode == StrategyMode::Quadrature) {
    out.strategy.kind = StrategyKind::Quadrature;
    out.strategy.reason = "quadrature requested";
    out.strategy.threshold_x = quadrature_threshold(s, opts.c_switch);
    run_quadrature(a, b);
    return out;
  }

  if (opts.mode == StrategyMode::Recursion) {
    out.strategy.threshold_x = quadrature_threshold(s, opts.c_switch);
    out.strategy.reason = "recursion requested";
    double lo = a;
    if (a == 0.0) {
      lo = std::min(b, out.strategy.threshold_x);
      run_quadrature(0.0, lo);
      out.strategy.split = true;
      out.strategy.split_at = lo;
      out.strategy.reason = "recursion requested; lower limit 0 reached by quadrature";
      if (lo >= b) {
        out.strategy.kind = StrategyKind::Quadrature;
        return out;
      }
    }
    StrategyKind kind;
    out.value += detail::analytic_difference(s, lo, b, opts.eval, kind);
    out.strategy.kind = kind;
    return out;
  }

  out.strategy = choose_strategy(s, a, b, opts.c_switch);
  if (out.strategy.kind == StrategyKind::Quadrature) {
    run_quadrature(a, b);
    return out;
  }
  const double lo = out.strategy.split ? out.strategy.split_at : a;
  try {
    StrategyKind kind;
    const double analytic = detail::analytic_difference(s, lo, b, opts.eval, kind);
    if (out.strategy.split) run_quadrature(a, lo);
    out.value += analytic;
    out.strategy.kind = kind;
  } catch (const NearDegenerate& e) {
    out = DefiniteResult{};
    out.strategy.kind = StrategyKind::Quadrature;
    out.strategy.threshold_x = quadrature_threshold(s, opts.c_switch);
    out.strategy.reason = std::string("near-degenerate scales, quadrature fallback: ") + e.what();
    run_quadrature(a, b);
  }
  return out;
}

}  // namespace besselquad
