#pragma once

// Integrals of a tabulated, slowly varying f(x) against one or two spherical
// Bessel functions: f is interpolated piecewise by polynomials and each piece
// is integrated through the monomial antiderivatives.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "besselquad/definite.hpp"
#include "besselquad/errors.hpp"

namespace besselquad {

struct Sample {
  double x = 0.0;
  double f = 0.0;
};

/// Piecewise polynomial in a per-interval centred basis:
/// p(x) = sum_m coefficients[i][m] (x - breakpoints[i])^m on
/// [breakpoints[i], breakpoints[i+1]].
struct PiecewisePolynomial {
  std::vector<double> breakpoints;
  std::vector<std::vector<double>> coefficients;
  int degree = 1;

  std::size_t pieces() const { return coefficients.size(); }
  double lo() const { return breakpoints.front(); }
  double hi() const { return breakpoints.back(); }

  std::size_t piece_index(double x) const {
    if (x <= breakpoints.front()) return 0;
    if (x >= breakpoints.back()) return pieces() - 1;
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    return static_cast<std::size_t>(it - breakpoints.begin()) - 1;
  }

  double eval_piece(std::size_t i, double x) const {
    const double t = x - breakpoints[i];
    double v = 0.0;
    const auto& c = coefficients[i];
    for (std::size_t m = c.size(); m-- > 0;) v = v * t + c[m];
    return v;
  }

  double operator()(double x) const {
    if (x < lo() || x > hi())
      throw DomainError("PiecewisePolynomial: argument outside the sample span");
    return eval_piece(piece_index(x), x);
  }

  /// Coefficients of piece i in powers of x itself.
  std::vector<double> global_coefficients(std::size_t i) const {
    const auto& c = coefficients[i];
    const double shift = -breakpoints[i];
    std::vector<double> g(c.size(), 0.0);
    for (std::size_t m = 0; m < c.size(); ++m) {
      // (x + shift)^m = sum_j C(m, j) x^j shift^(m-j)
      double binom = 1.0;
      for (std::size_t j = 0; j <= m; ++j) {
        g[j] += c[m] * binom * std::pow(shift, static_cast<double>(m - j));
        binom = binom * static_cast<double>(m - j) / static_cast<double>(j + 1);
      }
    }
    return g;
  }
};

namespace detail {

inline void check_samples(const std::vector<Sample>& s) {
  if (s.size() < 2) throw DomainError("build_interpolant: need at least 2 samples");
  if (s.front().x < 0.0) throw DomainError("build_interpolant: abscissae must be >= 0");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s[i].x) || !std::isfinite(s[i].f))
      throw DomainError("build_interpolant: non-finite sample");
    if (i > 0 && !(s[i].x > s[i - 1].x))
      throw DomainError("build_interpolant: abscissae must be strictly increasing");
  }
}

// Second derivatives of the not-a-knot cubic spline through s (size >= 4).
// The end conditions (third derivative continuous across the first and last
// interior knots) are eliminated into the first and last rows, leaving a
// tridiagonal system in M_1 .. M_{N-2}.
inline std::vector<double> not_a_knot_moments(const std::vector<Sample>& s) {
  const std::size_t N = s.size();
  std::vector<double> h(N - 1), d(N - 1);
  for (std::size_t i = 0; i + 1 < N; ++i) {
    h[i] = s[i + 1].x - s[i].x;
    d[i] = (s[i + 1].f - s[i].f) / h[i];
  }
  const std::size_t K = N - 2;
  std::vector<double> lower(K, 0.0), diag(K, 0.0), upper(K, 0.0), rhs(K, 0.0);
  for (std::size_t r = 0; r < K; ++r) {
    const std::size_t i = r + 1;
    lower[r] = h[i - 1];
    diag[r] = 2.0 * (h[i - 1] + h[i]);
    upper[r] = h[i];
    rhs[r] = 6.0 * (d[i] - d[i - 1]);
  }
  // M_0 = (1 + h0/h1) M_1 - (h0/h1) M_2
  diag[0] += h[0] * (1.0 + h[0] / h[1]);
  upper[0] -= h[0] * h[0] / h[1];
  // M_{N-1} = (1 + h_{N-2}/h_{N-3}) M_{N-2} - (h_{N-2}/h_{N-3}) M_{N-3}
  const double hl = h[N - 2], hp = h[N - 3];
  diag[K - 1] += hl * (1.0 + hl / hp);
  lower[K - 1] -= hl * hl / hp;

  for (std::size_t r = 1; r < K; ++r) {
    const double w = lower[r] / diag[r - 1];
    diag[r] -= w * upper[r - 1];
    rhs[r] -= w * rhs[r - 1];
  }
  std::vector<double> M(N, 0.0);
  M[K] = rhs[K - 1] / diag[K - 1];
  for (std::size_t r = K - 1; r-- > 0;) M[r + 1] = (rhs[r] - upper[r] * M[r + 2]) / diag[r];
  M[0] = (1.0 + h[0] / h[1]) * M[1] - h[0] / h[1] * M[2];
  M[N - 1] = (1.0 + hl / hp) * M[N - 2] - hl / hp * M[N - 3];
  return M;
}

}  // namespace detail

/// Degree 1: piecewise linear. Degree 3: not-a-knot cubic spline (C2, exact
/// on cubics); with three samples it is the interpolating parabola and with
/// two the line.
inline PiecewisePolynomial build_interpolant(const std::vector<Sample>& samples,
                                             int degree) {
  if (degree != 1 && degree != 3) throw DomainError("build_interpolant: degree must be 1 or 3");
  detail::check_samples(samples);
  PiecewisePolynomial p;
  p.degree = degree;
  const std::size_t N = samples.size();
  for (const Sample& s : samples) p.breakpoints.push_back(s.x);

  if (degree == 1 || N == 2) {
    for (std::size_t i = 0; i + 1 < N; ++i) {
      const double slope = (samples[i + 1].f - samples[i].f) / (samples[i + 1].x - samples[i].x);
      std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
      c[0] = samples[i].f;
      c[1] = slope;
      p.coefficients.push_back(c);
    }
    return p;
  }

  if (N == 3) {
    const double x0 = samples[0].x, x1 = samples[1].x, x2 = samples[2].x;
    const double d01 = (samples[1].f - samples[0].f) / (x1 - x0);
    const double d12 = (samples[2].f - samples[1].f) / (x2 - x1);
    const double c2 = (d12 - d01) / (x2 - x0);
    // Newton form f0 + d01 (x - x0) + c2 (x - x0)(x - x1), re-centred per piece.
    for (std::size_t i = 0; i < 2; ++i) {
      const double xi = samples[i].x;
      const double slope = d01 + c2 * ((xi - x0) + (xi - x1));
      p.coefficients.push_back({samples[i].f, slope, c2, 0.0});
    }
    return p;
  }

  const std::vector<double> M = detail::not_a_knot_moments(samples);
  for (std::size_t i = 0; i + 1 < N; ++i) {
    const double h = samples[i + 1].x - samples[i].x;
    const double c1 = (samples[i + 1].f - samples[i].f) / h - h * (2.0 * M[i] + M[i + 1]) / 6.0;
    p.coefficients.push_back({samples[i].f, c1, M[i] / 2.0, (M[i + 1] - M[i]) / (6.0 * h)});
  }
  return p;
}

/// Reads "x,f" rows. A first line that does not parse as two numbers is
/// taken as a header; blank lines are skipped.
inline std::vector<Sample> read_samples_csv(std::istream& in) {
  std::vector<Sample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    Sample s;
    std::string rest;
    if (!(row >> s.x >> s.f) || (row >> rest)) {
      if (out.empty() && line_no == 1) continue;
      throw DomainError("samples CSV: cannot parse line " + std::to_string(line_no));
    }
    out.push_back(s);
  }
  return out;
}

struct WeightedResult {
  double value = 0.0;
  double abs_error_est = 0.0;
  std::size_t evaluations = 0;
  std::size_t quadrature_pieces = 0;
  std::size_t analytic_pieces = 0;

  std::string strategy_label() const {
    if (quadrature_pieces && analytic_pieces) return "quadrature+recursion";
    return quadrature_pieces ? "quadrature" : "recursion";
  }
};

namespace detail {

// `base` carries family, orders and scales; its n is replaced per monomial.
inline WeightedResult integrate_weighted(const PiecewisePolynomial& f, IntegralSpec base,
                                         double a, double b, const DefiniteOptions& opts) {
  base.n = 0;
  validate(base);
  if (f.pieces() == 0) throw DomainError("weighted integral: empty interpolant");
  if (!(a < b)) throw DomainError("weighted integral: requires a < b");
  if (a < f.lo() || b > f.hi())
    throw DomainError("weighted integral: [a, b] exceeds the interpolant span");

  const double threshold = quadrature_threshold(base, opts.c_switch);
  std::vector<double> cuts{a, b};
  for (double x : f.breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  if (threshold > a && threshold < b && opts.mode != StrategyMode::Quadrature)
    cuts.push_back(threshold);
  std::sort(cuts.begin(), cuts.end());

  WeightedResult out;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double u = cuts[c], v = cuts[c + 1];
    const std::size_t piece = f.piece_index(0.5 * (u + v));
    bool quadrature = opts.mode == StrategyMode::Quadrature ||
                      (opts.mode == StrategyMode::Auto && v <= threshold) ||
                      (opts.mode == StrategyMode::Recursion && a == 0.0 && v <= threshold);
    if (!quadrature) {
      try {
        const std::vector<double> g = f.global_coefficients(piece);
        double sum = 0.0;
        for (std::size_t m = 0; m < g.size(); ++m) {
          if (g[m] == 0.0) continue;
          IntegralSpec s = base;
          s.n = static_cast<int>(m);
          sum += g[m] * (antiderivative(s, v, opts.eval).value -
                         antiderivative(s, u, opts.eval).value);
        }
        out.value += sum;
        ++out.analytic_pieces;
        continue;
      } catch (const NearDegenerate&) {
        if (opts.mode == StrategyMode::Recursion) throw;
        quadrature = true;
      }
    }
    auto integrand_fn = [&](double x) { return f.eval_piece(piece, x) * integrand(base, x); };
    const QuadratureResult q = adaptive_quad(integrand_fn, u, v, oracle_options(base, opts.tol));
    if (!q.converged)
      throw NotConverged("weighted integral: quadrature did not converge on a piece");
    out.value += q.value;
    out.abs_error_est += q.error_estimate;
    out.evaluations += q.evaluations;
    ++out.quadrature_pieces;
  }
  return out;
}

}  // namespace detail

/// int_a^b f(x) j_l(alpha x) dx.
inline WeightedResult integrate_single_report(const PiecewisePolynomial& f, int l,
                                              double alpha, double a, double b,
                                              const DefiniteOptions& opts = {}) {
  return detail::integrate_weighted(f, IntegralSpec::single(0, l, alpha), a, b, opts);
}

inline double integrate_single(const PiecewisePolynomial& f, int l, double alpha, double a,
                               double b, const DefiniteOptions& opts = {}) {
  return integrate_single_report(f, l, alpha, a, b, opts).value;
}

/// int_a^b f(x) j_k(alpha x) j_l(beta x) dx, dispatched to H, K or L.
inline WeightedResult integrate_product_report(const PiecewisePolynomial& f, int k, int l,
                                               double alpha, double beta, double a, double b,
                                               const DefiniteOptions& opts = {}) {
  IntegralSpec s;
  if (k == l && alpha == beta)
    s = IntegralSpec::squared(0, l, alpha);
  else if (k == l)
    s = IntegralSpec::same_order(0, l, alpha, beta);
  else
    s = IntegralSpec::mixed(0, k, l, alpha, beta);
  return detail::integrate_weighted(f, s, a, b, opts);
}

inline double integrate_product(const PiecewisePolynomial& f, int k, int l, double alpha,
                                double beta, double a, double b,
                                const DefiniteOptions& opts = {}) {
  return integrate_product_report(f, k, l, alpha, beta, a, b, opts).value;
}

}  // namespace besselquad
