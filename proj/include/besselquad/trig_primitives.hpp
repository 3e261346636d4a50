#pragma once

// Antiderivatives of x^n sin x and x^n cos x for integer n.
//
//   X_n(x) = int x^n sin x dx,   Y_n(x) = int x^n cos x dx
//
// The integration constants are fixed by the base cases X_0 = -cos x,
// Y_0 = sin x, X_{-1} = Si(x), Y_{-1} = Ci(x); every other X_n, Y_n is
// obtained from these by integration by parts, so values (not only
// differences) are reproducible.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "besselquad/antiderivative.hpp"
#include "besselquad/errors.hpp"

namespace besselquad {

struct TrigPrimitive {
  int n = 0;
  double x = 0.0;
  double X = 0.0;
  double Y = 0.0;
};

namespace detail {

// Below this the power series is used for Si/Ci, above it the continued
// fraction for E1(ix). Both are accurate to a few ulp at the switch.
inline constexpr double kSiCiSeriesLimit = 4.0;

template <class T>
void si_ci_series(T x, T& si_out, T& ci_out) {
  const T x2 = x * x;
  const T eps = std::numeric_limits<T>::epsilon() / 4;
  // Si = sum (-1)^k x^(2k+1) / ((2k+1) (2k+1)!)
  // Ci = gamma + ln x + sum_{k>=1} (-1)^k x^(2k) / (2k (2k)!)
  T si = 0;
  T ci = 0;
  T fact_term = x;  // x^(2k+1)/(2k+1)!
  for (int k = 0; k < 80; ++k) {
    const T t = fact_term / (2 * k + 1);
    si += (k % 2 == 0) ? t : -t;
    if (std::abs(t) < eps * std::abs(si)) break;
    fact_term *= x2 / (T(2 * k + 2) * T(2 * k + 3));
  }
  T even_term = 1;  // x^(2k)/(2k)!
  for (int k = 1; k < 80; ++k) {
    even_term *= x2 / (T(2 * k - 1) * T(2 * k));
    const T t = even_term / (2 * k);
    ci += (k % 2 == 0) ? t : -t;
    if (std::abs(t) < eps * (std::abs(ci) + 1)) break;
  }
  si_out = si;
  ci_out = std::numbers::egamma_v<T> + std::log(x) + ci;
}

// Modified Lentz evaluation of the continued fraction for E1(ix). Returns
// Si(x) - pi/2 = Im E1(ix) and Ci(x) = -Re E1(ix).
template <class T>
void si_tail_ci_continued_fraction(T x, T& si_tail_out, T& ci_out) {
  using C = std::complex<T>;
  const T tiny = T(1e-300);
  const T eps = std::numeric_limits<T>::epsilon() / 4;
  C b(1, x);
  C c(1 / tiny, 0);
  C d = T(1) / b;
  C h = d;
  for (int i = 2; i < 2000; ++i) {
    const T a = -T(i - 1) * T(i - 1);
    b += T(2);
    d = T(1) / (a * d + b);
    c = b + a / c;
    const C del = c * d;
    h *= del;
    if (std::abs(del.real() - 1) + std::abs(del.imag()) < eps) break;
  }
  h *= C(std::cos(x), -std::sin(x));
  ci_out = -h.real();
  si_tail_out = h.imag();
}

template <class T>
void si_ci(T x, T& si_out, T& ci_out) {
  if (x <= T(kSiCiSeriesLimit)) {
    si_ci_series(x, si_out, ci_out);
  } else {
    T tail = 0;
    si_tail_ci_continued_fraction(x, tail, ci_out);
    si_out = std::numbers::pi_v<T> / 2 + tail;
  }
}

// Si(x) - pi/2 and Ci(x).
template <class T>
void si_tail_ci(T x, T& tail_out, T& ci_out) {
  if (x <= T(kSiCiSeriesLimit)) {
    T s = 0;
    si_ci_series(x, s, ci_out);
    tail_out = s - std::numbers::pi_v<T> / 2;
  } else {
    si_tail_ci_continued_fraction(x, tail_out, ci_out);
  }
}

inline int mod4(int n) { return ((n % 4) + 4) % 4; }

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Upward from X_0 = -cos, Y_0 = sin for n >= 0; downward from the given
// X_{-1}, Y_{-1} for n < 0.
template <class T>
void trig_walk(int n, T x, T x_minus1, T y_minus1, T& X_out, T& Y_out) {
  const T s = std::sin(x);
  const T c = std::cos(x);
  if (n >= 0) {
    T X = -c;
    T Y = s;
    T xm = 1;
    for (int m = 1; m <= n; ++m) {
      xm *= x;
      const T Xm = m * Y - xm * c;
      const T Ym = xm * s - m * X;
      X = Xm;
      Y = Ym;
    }
    X_out = X;
    Y_out = Y;
    return;
  }
  T X = x_minus1;
  T Y = y_minus1;
  T xm1 = 1 / x;  // x^(m+1) for m = -2
  for (int m = -2; m >= n; --m) {
    const T Xm = (xm1 * s - Y) / (m + 1);
    const T Ym = (xm1 * c + X) / (m + 1);
    X = Xm;
    Y = Ym;
    xm1 /= x;
  }
  X_out = X;
  Y_out = Y;
}

// X_n, Y_n with the Si/Ci-based constants, x > 0.
template <class T>
void trig_std(int n, T x, T& X, T& Y) {
  T s = 0, c = 0;
  if (n < 0) si_ci(x, s, c);
  trig_walk(n, x, s, c, X, Y);
}

template <class T>
T X_std(int n, T x) {
  T X = 0, Y = 0;
  trig_std(n, x, X, Y);
  return X;
}

// X_n, Y_n with the standard constants for n >= 0 and the
// vanishing-at-infinity ones for n <= -1, x > 0.
template <class T>
void trig_tail(int n, T x, T& X, T& Y) {
  T xm1 = 0, ym1 = 0;
  if (n < 0) si_tail_ci(x, xm1, ym1);
  trig_walk(n, x, xm1, ym1, X, Y);
}

// int x^m cos(c x) dx and int x^m sin(c x) dx under the tail convention
// applied at |c|.
template <class T>
T cos_primitive(int m, T c, T x) {
  const T ac = std::abs(c);
  T X = 0, Y = 0;
  trig_tail(m, ac * x, X, Y);
  return Y / std::pow(ac, T(m + 1));
}

template <class T>
T sin_primitive(int m, T c, T x) {
  const T ac = std::abs(c);
  T X = 0, Y = 0;
  trig_tail(m, ac * x, X, Y);
  const T v = X / std::pow(ac, T(m + 1));
  return c < 0 ? -v : v;
}

}  // namespace detail

/// Sine integral Si(x) = int_0^x sin(t)/t dt, x >= 0.
inline double si(double x) {
  if (!(x >= 0.0)) throw DomainError("si: argument must be >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return std::numbers::pi / 2.0;
  detail::real s = 0, c = 0;
  detail::si_ci<detail::real>(x, s, c);
  return static_cast<double>(s);
}

/// Cosine integral Ci(x) = -int_x^inf cos(t)/t dt, x > 0.
inline double ci(double x) {
  if (!(x > 0.0)) throw DomainError("ci: argument must be > 0 (Ci diverges at 0)");
  if (std::isinf(x)) return 0.0;
  detail::real s = 0, c = 0;
  detail::si_ci<detail::real>(x, s, c);
  return static_cast<double>(c);
}

/// Both X_n(x) and Y_n(x). Walks up from n = 0 for n >= 0, down from
/// n = -1 for n < 0.
inline TrigPrimitive trig_primitive(int n, double x) {
  if (x < 0.0 || std::isnan(x))
    throw DomainError("trig_primitive: argument must be >= 0");
  if (n < 0 && x == 0.0)
    throw DomainError("trig_primitive: Y_n(0) diverges for n < 0 and X_n(0) for n < -1");
  detail::real s = 0, c = 0, X = 0, Y = 0;
  if (n < 0) detail::si_ci<detail::real>(x, s, c);
  detail::trig_walk<detail::real>(n, x, s, c, X, Y);
  return {n, x, static_cast<double>(X), static_cast<double>(Y)};
}

/// Negative-order primitives normalized to vanish as x -> infinity:
/// X_n(x) = -int_x^inf t^n sin t dt, Y_n(x) = -int_x^inf t^n cos t dt, n <= -1.
/// They differ from the Si/Ci-based values by constants only (X_{-1} is
/// Si(x) - pi/2), but carry no pi/2 constant through the recursion, which
/// keeps intermediate values small at large x.
inline TrigPrimitive trig_primitive_tail(int n, double x) {
  if (n > -1) throw DomainError("trig_primitive_tail: requires n <= -1");
  if (!(x > 0.0)) throw DomainError("trig_primitive_tail: argument must be > 0");
  detail::real X = 0, Y = 0;
  detail::trig_tail<detail::real>(n, x, X, Y);
  return {n, x, static_cast<double>(X), static_cast<double>(Y)};
}

/// X_n(x) = int x^n sin x dx.
inline double eval_X(int n, double x) {
  if (x < 0.0) throw DomainError("eval_X: argument must be >= 0");
  if (x == 0.0) {
    if (n < -1) throw DomainError("eval_X: X_n(0) diverges for n < -1");
    if (n == -1) return 0.0;
  }
  return trig_primitive(n, x).X;
}

/// Y_n(x) = int x^n cos x dx.
inline double eval_Y(int n, double x) {
  if (x < 0.0) throw DomainError("eval_Y: argument must be >= 0");
  if (x == 0.0 && n < 0) throw DomainError("eval_Y: Y_n(0) diverges for n < 0");
  return trig_primitive(n, x).Y;
}

/// X_n with the vanishing-at-infinity constant for n <= -1 and the standard
/// one for n >= 0. Used by the product-integral engines.
inline double eval_X_tail(int n, double x) {
  if (n >= 0) return eval_X(n, x);
  return trig_primitive_tail(n, x).X;
}

inline double eval_Y_tail(int n, double x) {
  return n >= 0 ? eval_Y(n, x) : trig_primitive_tail(n, x).Y;
}

/// Below this argument, n < -1 primitives have no series and the upward
/// recursion is not trusted.
inline constexpr double kNegativeOrderSmallX = 0.1;

inline bool quadrature_recommended(int n, double x) {
  return n < -1 && x < kNegativeOrderSmallX;
}

inline double eval_X_checked(int n, double x) {
  if (quadrature_recommended(n, x))
    throw QuadratureRecommended("X_" + std::to_string(n) + " at x < 0.1");
  return eval_X(n, x);
}

inline double eval_Y_checked(int n, double x) {
  if (quadrature_recommended(n, x))
    throw QuadratureRecommended("Y_" + std::to_string(n) + " at x < 0.1");
  return eval_Y(n, x);
}

/// Largest |alpha x| for which the scaled series are used.
inline constexpr double kSeriesThreshold = 0.5;

namespace detail {

template <class T>
T scaled_X_series(int n, T alpha, T x, bool include_constant) {
  const T ax = alpha * x;
  const T ax2 = ax * ax;
  const T eps = std::numeric_limits<T>::epsilon() / 4;
  // alpha x^(n+2) sum_k (-1)^k (alpha x)^(2k) / ((2k+1)! (n+2k+2))
  T sum = 0;
  T p = 1;  // (alpha x)^(2k) / (2k+1)!
  for (int k = 0; k < 40; ++k) {
    const T t = p / (n + 2 * k + 2);
    sum += (k % 2 == 0) ? t : -t;
    if (k >= 4 && std::abs(t) < eps * std::abs(sum)) break;
    p *= ax2 / (T(2 * k + 2) * T(2 * k + 3));
  }
  T value = alpha * ipow(x, n + 2) * sum;
  if (include_constant) {
    const int r = mod4(n);
    if (r == 0 || r == 2) {
      const T cos_term = (r == 0) ? 1 : -1;
      value -= T(factorial(n)) * cos_term / ipow(alpha, n + 1);
    }
  }
  return value;
}

template <class T>
T scaled_Y_series(int n, T alpha, T x, bool include_constant) {
  const T ax = alpha * x;
  const T ax2 = ax * ax;
  const T eps = std::numeric_limits<T>::epsilon() / 4;
  // x^(n+1) sum_k (-1)^k (alpha x)^(2k) / ((2k)! (n+2k+1))
  T sum = 0;
  T p = 1;
  for (int k = 0; k < 40; ++k) {
    const T t = p / (n + 2 * k + 1);
    sum += (k % 2 == 0) ? t : -t;
    if (k >= 4 && std::abs(t) < eps * std::abs(sum)) break;
    p *= ax2 / (T(2 * k + 1) * T(2 * k + 2));
  }
  T value = ipow(x, n + 1) * sum;
  if (include_constant) {
    const int r = mod4(n);
    if (r == 1 || r == 3) {
      const T sin_term = (r == 1) ? 1 : -1;
      value += T(factorial(n)) * sin_term / ipow(alpha, n + 1);
    }
  }
  return value;
}

}  // namespace detail

/// int x^n sin(alpha x) dx = X_n(alpha x) / alpha^(n+1) by power series,
/// n >= 0. The constant -n! cos(n pi/2) / alpha^(n+1) is what makes the
/// series agree with the recursion; pass include_constant = false to drop it
/// when alpha is so small that the constant would swamp the result.
inline double eval_scaled_X_series(int n, double alpha, double x,
                                   bool include_constant = true) {
  if (n < 0) throw DomainError("eval_scaled_X_series: requires n >= 0");
  if (std::abs(alpha * x) > kSeriesThreshold)
    throw DomainError("eval_scaled_X_series: |alpha x| above series threshold");
  return static_cast<double>(
      detail::scaled_X_series<detail::real>(n, alpha, x, include_constant));
}

/// int x^n cos(alpha x) dx = Y_n(alpha x) / alpha^(n+1) by power series, n >= 0.
inline double eval_scaled_Y_series(int n, double alpha, double x,
                                   bool include_constant = true) {
  if (n < 0) throw DomainError("eval_scaled_Y_series: requires n >= 0");
  if (std::abs(alpha * x) > kSeriesThreshold)
    throw DomainError("eval_scaled_Y_series: |alpha x| above series threshold");
  return static_cast<double>(
      detail::scaled_Y_series<detail::real>(n, alpha, x, include_constant));
}

/// int x^m cos(c x) dx for real c != 0 and x > 0, under the frozen
/// convention applied at |c|: Y_m(|c| x) / |c|^(m+1), with the
/// vanishing-at-infinity constant for m <= -1.
inline double cos_primitive(int m, double c, double x) {
  return static_cast<double>(detail::cos_primitive<detail::real>(m, c, x));
}

/// int x^m sin(c x) dx = sign(c) X_m(|c| x) / |c|^(m+1).
inline double sin_primitive(int m, double c, double x) {
  return static_cast<double>(detail::sin_primitive<detail::real>(m, c, x));
}

}  // namespace besselquad
