#pragma once

// Integer-order Bessel functions J_n and identity checks for the
// ordinary-Bessel forms of the integral relations. The recursions do not
// terminate for J_n, so these are verification fixtures, not an engine.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "besselquad/antiderivative.hpp"
#include "besselquad/errors.hpp"
#include "besselquad/quadrature.hpp"

namespace besselquad {

namespace detail {

// Miller's algorithm: downward recurrence from far above max(n, x), normalized
// with J_0 + 2 sum_k J_2k = 1.
inline real besselJ_impl(int n, real x) {
  if (x == 0) return n == 0 ? real(1) : real(0);
  const real big = std::max<real>(n, x);
  int start = static_cast<int>(big + 30 + 8 * std::cbrt(static_cast<double>(big)));
  if (start % 2) ++start;
  real next = 0, cur = 1e-300L, result = 0, norm = 0;
  for (int m = start; m >= 1; --m) {
    const real prev = real(2 * m) / x * cur - next;  // J_{m-1}
    next = cur;
    cur = prev;
    if (m - 1 == n) result = cur;
    if ((m - 1) % 2 == 0 && m - 1 > 0) norm += 2 * cur;
    if (std::abs(cur) > real(1e300)) {
      cur *= real(1e-300);
      next *= real(1e-300);
      result *= real(1e-300);
      norm *= real(1e-300);
    }
  }
  norm += cur;  // J_0
  return result / norm;
}

// Any integer order, J_{-n} = (-1)^n J_n.
inline real besselJ_signed(int n, real x) {
  if (n < 0) return sign_pow(n) * besselJ_impl(-n, x);
  return besselJ_impl(n, x);
}

}  // namespace detail

/// J_order(x), order >= 0, x >= 0.
inline double besselJ(int order, double x) {
  if (order < 0) throw DomainError("besselJ: order must be >= 0");
  if (!(x >= 0.0)) throw DomainError("besselJ: argument must be >= 0");
  return static_cast<double>(detail::besselJ_impl(order, x));
}

enum class AppendixIdentity {
  SingleRecursion,
  SinglePowerLPlus1,
  SinglePowerLPlus3,
  SinglePower1MinusL,
  SquaredRecursion,
  SquaredInverseSquare,
  SquaredPower1Minus2L,
  SquaredPower1,
  SquaredPower3,
  SquaredPower2LPlus1,
  SameOrderRecursion,
  SameOrderPower1,
  MixedLowering,
  MixedAdjacent,
  MixedScaleRelation,
  EqualAdjacent,
  EqualInverse,
  EqualInverseSquare,
  EqualPower1MinusKMinusL,
  EqualPowerLMinusKPlus1,
  EqualPowerKPlusLPlus1,
};

inline constexpr std::array<AppendixIdentity, 21> kAllAppendixIdentities = {
    AppendixIdentity::SingleRecursion,      AppendixIdentity::SinglePowerLPlus1,
    AppendixIdentity::SinglePowerLPlus3,    AppendixIdentity::SinglePower1MinusL,
    AppendixIdentity::SquaredRecursion,     AppendixIdentity::SquaredInverseSquare,
    AppendixIdentity::SquaredPower1Minus2L, AppendixIdentity::SquaredPower1,
    AppendixIdentity::SquaredPower3,        AppendixIdentity::SquaredPower2LPlus1,
    AppendixIdentity::SameOrderRecursion,   AppendixIdentity::SameOrderPower1,
    AppendixIdentity::MixedLowering,        AppendixIdentity::MixedAdjacent,
    AppendixIdentity::MixedScaleRelation,   AppendixIdentity::EqualAdjacent,
    AppendixIdentity::EqualInverse,         AppendixIdentity::EqualInverseSquare,
    AppendixIdentity::EqualPower1MinusKMinusL,
    AppendixIdentity::EqualPowerLMinusKPlus1,
    AppendixIdentity::EqualPowerKPlusLPlus1,
};

inline std::string_view to_string(AppendixIdentity id) {
  switch (id) {
    case AppendixIdentity::SingleRecursion: return "single_recursion";
    case AppendixIdentity::SinglePowerLPlus1: return "single_power_l_plus_1";
    case AppendixIdentity::SinglePowerLPlus3: return "single_power_l_plus_3";
    case AppendixIdentity::SinglePower1MinusL: return "single_power_1_minus_l";
    case AppendixIdentity::SquaredRecursion: return "squared_recursion";
    case AppendixIdentity::SquaredInverseSquare: return "squared_inverse_square";
    case AppendixIdentity::SquaredPower1Minus2L: return "squared_power_1_minus_2l";
    case AppendixIdentity::SquaredPower1: return "squared_power_1";
    case AppendixIdentity::SquaredPower3: return "squared_power_3";
    case AppendixIdentity::SquaredPower2LPlus1: return "squared_power_2l_plus_1";
    case AppendixIdentity::SameOrderRecursion: return "same_order_recursion";
    case AppendixIdentity::SameOrderPower1: return "same_order_power_1";
    case AppendixIdentity::MixedLowering: return "mixed_lowering";
    case AppendixIdentity::MixedAdjacent: return "mixed_adjacent";
    case AppendixIdentity::MixedScaleRelation: return "mixed_scale_relation";
    case AppendixIdentity::EqualAdjacent: return "equal_adjacent";
    case AppendixIdentity::EqualInverse: return "equal_inverse";
    case AppendixIdentity::EqualInverseSquare: return "equal_inverse_square";
    case AppendixIdentity::EqualPower1MinusKMinusL: return "equal_power_1_minus_k_minus_l";
    case AppendixIdentity::EqualPowerLMinusKPlus1: return "equal_power_l_minus_k_plus_1";
    case AppendixIdentity::EqualPowerKPlusLPlus1: return "equal_power_k_plus_l_plus_1";
  }
  return "unknown";
}

/// Parameters of an identity; each identity reads only the ones it uses.
struct AppendixParams {
  int n = 0;
  int k = 0;
  int l = 1;
  double alpha = 1.0;
  double beta = 2.0;
};

namespace detail {

using RealFn = std::function<real(real)>;

// Either a closed form (antiderivative F of lhs) or a relation
// int lhs = sum_i coef_i int term_i + [boundary]_a^b.
struct IdentityForm {
  RealFn lhs;
  RealFn antiderivative;
  std::vector<std::pair<real, RealFn>> terms;
  RealFn boundary;
};

inline IdentityForm identity_form(AppendixIdentity id, const AppendixParams& p) {
  const int n = p.n, k = p.k, l = p.l;
  const real a = p.alpha, b = p.beta;
  auto J = [](int m, real x) { return besselJ_signed(m, x); };
  auto pw = [](real x, int m) { return ipow(x, m); };
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw DomainError(std::string(to_string(id)) + ": requires " + what);
  };
  IdentityForm F;
  switch (id) {
    case AppendixIdentity::SingleRecursion:
      need(l >= 1, "l >= 1");
      F.lhs = [=](real x) { return pw(x, n) * J(l, x); };
      F.terms = {{real(l + n - 1), [=](real x) { return pw(x, n - 1) * J(l - 1, x); }}};
      F.boundary = [=](real x) { return -pw(x, n) * J(l - 1, x); };
      break;
    case AppendixIdentity::SinglePowerLPlus1:
      F.lhs = [=](real x) { return pw(x, l + 1) * J(l, x); };
      F.antiderivative = [=](real x) { return pw(x, l + 1) * J(l + 1, x); };
      break;
    case AppendixIdentity::SinglePowerLPlus3:
      F.lhs = [=](real x) { return pw(x, l + 3) * J(l, x); };
      F.antiderivative = [=](real x) {
        return pw(x, l + 2) * (real(2 * (l + 1)) * J(l + 2, x) - x * J(l + 3, x));
      };
      break;
    case AppendixIdentity::SinglePower1MinusL:
      need(l >= 1, "l >= 1");
      F.lhs = [=](real x) { return pw(x, 1 - l) * J(l, x); };
      F.antiderivative = [=](real x) {
        return std::pow(real(2), real(-l)) / std::tgamma(real(l)) - pw(x, 1 - l) * J(l - 1, x);
      };
      break;
    case AppendixIdentity::SquaredRecursion:
      need(l >= 1, "l >= 1");
      F.lhs = [=](real x) { return pw(x, n) * J(l, x) * J(l, x); };
      F.terms = {{real(1), [=](real x) { return pw(x, n) * J(l - 1, x) * J(l - 1, x); }},
                 {real(0.5) * (n - 1) * (2 * l + n - 3),
                  [=](real x) { return pw(x, n - 2) * J(l - 1, x) * J(l - 1, x); }}};
      F.boundary = [=](real x) {
        return real(1 - n) / 2 * pw(x, n - 1) * J(l - 1, x) * J(l - 1, x) -
               pw(x, n) * J(l, x) * J(l - 1, x);
      };
      break;
    case AppendixIdentity::SquaredInverseSquare:
      need(l >= 1, "l >= 1");
      F.lhs = [=](real x) { return J(l, x) * J(l, x) / (x * x); };
      F.antiderivative = [=](real x) {
        const real jm = J(l - 1, x), jl = J(l, x);
        return (2 * x * x * jm * jm - real(4 * l - 2) * x * jm * jl +
                (2 * x * x + 1 - 2 * l) * jl * jl) /
               (x * real(4 * l * l - 1));
      };
      break;
    case AppendixIdentity::SquaredPower1Minus2L:
      need(l >= 1, "l >= 1");
      F.lhs = [=](real x) { return pw(x, 1 - 2 * l) * J(l, x) * J(l, x); };
      F.antiderivative = [=](real x) {
        const real g = std::tgamma(real(l));
        const real jm = J(l - 1, x), jl = J(l, x);
        return 2 / (std::pow(real(4), real(l)) * real(2 * l - 1) * g * g) -
               pw(x, 2 * (1 - l)) * (jm * jm + jl * jl) / real(2 * (2 * l - 1));
      };
      break;
    case AppendixIdentity::SquaredPower1:
      F.lhs = [=](real x) { return x * J(l, x) * J(l, x); };
      F.antiderivative = [=](real x) {
        return x * x / 2 * (J(l, x) * J(l, x) - J(l - 1, x) * J(l + 1, x));
      };
      break;
    case AppendixIdentity::SquaredPower3:
      F.lhs = [=](real x) { return x * x * x * J(l, x) * J(l, x); };
      F.antiderivative = [=](real x) {
        const real jm = J(l - 1, x), jl = J(l, x), L = l;
        return x / 6 *
               (-(L + 1) * (4 * L * L - 4 * L + 2 * x * x) * jl * jm +
                x * (2 * L * L + x * x - 2) * jm * jm + x * (2 * L * L + 2 * L + x * x) * jl * jl);
      };
      break;
    case AppendixIdentity::SquaredPower2LPlus1:
      F.lhs = [=](real x) { return pw(x, 2 * l + 1) * J(l, x) * J(l, x); };
      F.antiderivative = [=](real x) {
        return pw(x, 2 * l + 2) / real(2 * (2 * l + 1)) *
               (J(l, x) * J(l, x) + J(l + 1, x) * J(l + 1, x));
      };
      break;
    case AppendixIdentity::SameOrderRecursion:
      need(l >= 1, "l >= 1");
      need(a != 0 && b != 0, "nonzero scales");
      F.lhs = [=](real x) { return 2 * a * b * pw(x, n) * J(l, a * x) * J(l, b * x); };
      F.terms = {{a * a + b * b,
                  [=](real x) { return pw(x, n) * J(l - 1, a * x) * J(l - 1, b * x); }},
                 {real(n - 1) * real(n + 2 * l - 3),
                  [=](real x) { return pw(x, n - 2) * J(l - 1, a * x) * J(l - 1, b * x); }}};
      F.boundary = [=](real x) {
        return real(1 - n) * pw(x, n - 1) * J(l - 1, a * x) * J(l - 1, b * x) -
               pw(x, n) * (b * J(l - 1, a * x) * J(l, b * x) + a * J(l, a * x) * J(l - 1, b * x));
      };
      break;
    case AppendixIdentity::SameOrderPower1:
      need(a * a != b * b, "alpha^2 != beta^2");
      F.lhs = [=](real x) { return x * J(l, a * x) * J(l, b * x); };
      F.antiderivative = [=](real x) {
        return x / (a * a - b * b) *
               (b * J(l, a * x) * J(l - 1, b * x) - a * J(l - 1, a * x) * J(l, b * x));
      };
      break;
    case AppendixIdentity::MixedLowering:
      need(l >= 2, "l >= 2");
      need(b != 0, "beta != 0");
      F.lhs = [=](real x) { return pw(x, n) * J(k, a * x) * J(l, b * x); };
      F.terms = {{real(2 * (l - 1)) / b,
                  [=](real x) { return pw(x, n - 1) * J(k, a * x) * J(l - 1, b * x); }},
                 {real(-1), [=](real x) { return pw(x, n) * J(k, a * x) * J(l - 2, b * x); }}};
      F.boundary = [](real) { return real(0); };
      break;
    case AppendixIdentity::MixedAdjacent:
      need(l >= 1, "l >= 1");
      F.lhs = [=](real x) { return real(n) * pw(x, n) * J(l - 1, a * x) * J(l, b * x); };
      F.terms = {{a, [=](real x) { return pw(x, n + 1) * J(l, a * x) * J(l, b * x); }},
                 {-b, [=](real x) { return pw(x, n + 1) * J(l - 1, a * x) * J(l - 1, b * x); }}};
      F.boundary = [=](real x) { return pw(x, n + 1) * J(l - 1, a * x) * J(l, b * x); };
      break;
    case AppendixIdentity::MixedScaleRelation:
      F.lhs = [=](real x) { return (a * a - b * b) * x * J(k, a * x) * J(l, b * x); };
      F.terms = {{real(k * k - l * l), [=](real x) { return J(k, a * x) * J(l, b * x) / x; }}};
      F.boundary = [=](real x) {
        return b * x * J(k, a * x) * J(l - 1, b * x) - a * x * J(k - 1, a * x) * J(l, b * x) +
               real(k - l) * J(k, a * x) * J(l, b * x);
      };
      break;
    case AppendixIdentity::EqualAdjacent:
      need(l >= 1, "l >= 1");
      F.lhs = [=](real x) { return pw(x, n) * J(l - 1, x) * J(l, x); };
      F.terms = {{real(l) + real(n) / 2 - 1,
                  [=](real x) { return pw(x, n - 1) * J(l - 1, x) * J(l - 1, x); }}};
      F.boundary = [=](real x) { return -pw(x, n) * J(l - 1, x) * J(l - 1, x) / 2; };
      break;
    case AppendixIdentity::EqualInverse:
      need(k * k != l * l, "k^2 != l^2");
      F.lhs = [=](real x) { return J(k, x) * J(l, x) / x; };
      F.antiderivative = [=](real x) {
        return (x * (J(k - 1, x) * J(l, x) - J(k, x) * J(l - 1, x)) + real(l - k) * J(k, x) * J(l, x)) /
               real(k * k - l * l);
      };
      break;
    case AppendixIdentity::EqualInverseSquare:
      need(k + l != 1 && std::abs(k - l) != 1, "k + l != 1 and |k - l| != 1");
      F.lhs = [=](real x) { return J(k, x) * J(l, x) / (x * x); };
      F.antiderivative = [=](real x) {
        const real s = k + l, u = 1 + k - l, v = 1 + l - k;
        const real jk = J(k, x), jl = J(l, x), jk1 = J(k + 1, x), jl1 = J(l + 1, x);
        return jk * jl / (x * (s - 1)) - jk1 * jl / (u * (s - 1)) - jk * jl1 / (v * (s - 1)) +
               2 * x * (jk1 * jl1 + jk * jl) / ((s - 1) * (s + 1) * u * v);
      };
      break;
    case AppendixIdentity::EqualPower1MinusKMinusL:
      need(k >= 1 && l >= 1, "k >= 1 and l >= 1");
      F.lhs = [=](real x) { return pw(x, 1 - k - l) * J(k, x) * J(l, x); };
      F.antiderivative = [=](real x) {
        const real s = k + l;
        return 1 / (std::pow(real(2), s - 1) * (s - 1) * std::tgamma(real(k)) * std::tgamma(real(l))) -
               pw(x, 2 - k - l) * (J(k - 1, x) * J(l - 1, x) + J(k, x) * J(l, x)) / (2 * (s - 1));
      };
      break;
    case AppendixIdentity::EqualPowerLMinusKPlus1:
      need(k != l + 1, "k != l + 1");
      F.lhs = [=](real x) { return pw(x, l - k + 1) * J(k, x) * J(l, x); };
      F.antiderivative = [=](real x) {
        return pw(x, l - k + 2) / real(2 * (k - l - 1)) *
               (J(k - 1, x) * J(l + 1, x) - J(k, x) * J(l, x));
      };
      break;
    case AppendixIdentity::EqualPowerKPlusLPlus1:
      F.lhs = [=](real x) { return pw(x, k + l + 1) * J(k, x) * J(l, x); };
      F.antiderivative = [=](real x) {
        return pw(x, k + l + 2) / real(2 * (k + l + 1)) *
               (J(k + 1, x) * J(l + 1, x) + J(k, x) * J(l, x));
      };
      break;
  }
  return F;
}

inline real oracle_integral(const RealFn& f, double a, double b, double max_scale) {
  QuadratureOptions q;
  q.abs_tol = 1e-14;
  q.rel_tol = 1e-14;
  q.max_initial_width = 2.0 / max_scale;
  const QuadratureResult r =
      adaptive_quad([&](double x) { return static_cast<double>(f(x)); }, a, b, q);
  return r.value;
}

}  // namespace detail

/// |LHS - RHS| / max(1, |oracle int lhs|) over [a, b], 0 < a < b. Closed
/// forms are applied as F(b) - F(a); relations integrate every term by
/// quadrature and add the boundary term.
inline double verify_identity(AppendixIdentity id, const AppendixParams& p, double a,
                              double b) {
  if (!(a > 0.0 && a < b)) throw DomainError("verify_identity: requires 0 < a < b");
  const detail::IdentityForm F = detail::identity_form(id, p);
  const double scale = std::max({1.0, std::abs(p.alpha), std::abs(p.beta)});
  const detail::real lhs = detail::oracle_integral(F.lhs, a, b, scale);
  detail::real rhs;
  if (F.antiderivative) {
    rhs = F.antiderivative(b) - F.antiderivative(a);
  } else {
    rhs = F.boundary(b) - F.boundary(a);
    for (const auto& [coef, term] : F.terms) rhs += coef * detail::oracle_integral(term, a, b, scale);
  }
  return static_cast<double>(std::abs(lhs - rhs) / std::max<detail::real>(1, std::abs(lhs)));
}

struct AppendixCase {
  AppendixIdentity id;
  AppendixParams params;
  double a;
  double b;
};

/// Three settings per identity: small orders, moderate orders, wide interval.
inline std::vector<AppendixCase> appendix_suite() {
  using I = AppendixIdentity;
  std::vector<AppendixCase> out;
  auto add = [&](I id, AppendixParams p1, AppendixParams p2, AppendixParams p3) {
    out.push_back({id, p1, 1.0, 10.0});
    out.push_back({id, p2, 0.5, 20.0});
    out.push_back({id, p3, 0.5, 60.0});
  };
  add(I::SingleRecursion, {2, 0, 1}, {3, 0, 4}, {-1, 0, 2});
  add(I::SinglePowerLPlus1, {0, 0, 1}, {0, 0, 4}, {0, 0, 0});
  add(I::SinglePowerLPlus3, {0, 0, 1}, {0, 0, 3}, {0, 0, 0});
  add(I::SinglePower1MinusL, {0, 0, 1}, {0, 0, 3}, {0, 0, 2});
  add(I::SquaredRecursion, {2, 0, 1}, {3, 0, 4}, {-1, 0, 2});
  add(I::SquaredInverseSquare, {0, 0, 1}, {0, 0, 4}, {0, 0, 2});
  add(I::SquaredPower1Minus2L, {0, 0, 1}, {0, 0, 3}, {0, 0, 2});
  add(I::SquaredPower1, {0, 0, 2}, {0, 0, 5}, {0, 0, 0});
  add(I::SquaredPower3, {0, 0, 1}, {0, 0, 4}, {0, 0, 2});
  add(I::SquaredPower2LPlus1, {0, 0, 1}, {0, 0, 3}, {0, 0, 0});
  add(I::SameOrderRecursion, {2, 0, 1, 1.0, 1.7}, {3, 0, 4, 0.8, 2.5}, {-1, 0, 2, 1.3, 0.6});
  add(I::SameOrderPower1, {0, 0, 1, 1.0, 2.0}, {0, 0, 4, 0.7, 1.9}, {0, 0, 0, 2.2, 1.1});
  add(I::MixedLowering, {1, 0, 2, 1.0, 1.7}, {2, 1, 5, 0.8, 2.5}, {0, 3, 4, 1.3, 0.6});
  add(I::MixedAdjacent, {1, 0, 1, 1.0, 1.7}, {2, 0, 3, 0.8, 2.5}, {-1, 0, 2, 1.3, 0.6});
  add(I::MixedScaleRelation, {0, 0, 1, 1.0, 1.7}, {0, 1, 4, 0.8, 2.5}, {0, 3, 2, 1.3, 0.6});
  add(I::EqualAdjacent, {1, 0, 1}, {2, 0, 3}, {0, 0, 2});
  add(I::EqualInverse, {0, 0, 2}, {0, 1, 4}, {0, 3, 1});
  add(I::EqualInverseSquare, {0, 0, 2}, {0, 1, 3}, {0, 2, 5});
  add(I::EqualPower1MinusKMinusL, {0, 1, 2}, {0, 2, 3}, {0, 1, 1});
  add(I::EqualPowerLMinusKPlus1, {0, 0, 2}, {0, 1, 3}, {0, 3, 1});
  add(I::EqualPowerKPlusLPlus1, {0, 0, 2}, {0, 1, 3}, {0, 2, 2});
  return out;
}

}  // namespace besselquad
