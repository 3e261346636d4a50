#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "besselquad/mixed_order.hpp"
#include "test_support.hpp"

using namespace besselquad;
using namespace testing_support;

namespace {

double definite_L(int n, int k, int l, double a, double b, double alpha, double beta,
                  EvalOptions o = {}) {
  return eval_L(n, k, l, b, alpha, beta, o).value - eval_L(n, k, l, a, alpha, beta, o).value;
}

double definite_Leq(int n, int k, int l, double a, double b, EvalOptions o = {}) {
  return eval_L_equal_args(n, k, l, b, o).value - eval_L_equal_args(n, k, l, a, o).value;
}

double oracle_L(int n, int k, int l, double a, double b, double alpha, double beta) {
  return oracle([&](double x) { return std::pow(x, n) * ref_j(k, alpha * x) * ref_j(l, beta * x); },
                a, b, std::max(std::abs(alpha), std::abs(beta)));
}

}  // namespace

TEST(Mixed, Orthogonality) {
  EXPECT_LT(std::abs(definite_Leq(0, 0, 2, 1e-6, 1000.0)), 5e-3);
  EXPECT_LT(std::abs(definite_L(0, 0, 2, 1e-6, 1000.0, 1.0, 1.0)), 5e-3);
}

TEST(Mixed, OracleExamples) {
  EXPECT_LE(rel_diff(definite_L(1, 0, 1, 0.5, 10.0, 1.0, 2.0), oracle_L(1, 0, 1, 0.5, 10.0, 1.0, 2.0)), 1e-9);
  const double adj = adjacent_closure(0, 1, 20.0, 1.0, 2.0).value - adjacent_closure(0, 1, 1.0, 1.0, 2.0).value;
  EXPECT_LE(rel_diff(adj, oracle_L(0, 0, 1, 1.0, 20.0, 1.0, 2.0)), 1e-9);
  const double base = base_L01(0, 10.0, 2.0, 3.0).value - base_L01(0, 1.0, 2.0, 3.0).value;
  EXPECT_LE(rel_diff(base, oracle_L(0, 0, 1, 1.0, 10.0, 2.0, 3.0)), 1e-9);
  const double eq = base_L01_equal_args(1, 10.0).value - base_L01_equal_args(1, 1.0).value;
  EXPECT_LE(rel_diff(eq, oracle_L(1, 0, 1, 1.0, 10.0, 1.0, 1.0)), 1e-10);
}

TEST(Mixed, JointSwapSymmetry) {
  for (int n = -1; n <= 3; ++n)
    for (double x : {3.0, 14.0})
      EXPECT_EQ(eval_L(n, 1, 4, x, 1.2, 0.6).value, eval_L(n, 4, 1, x, 0.6, 1.2).value);
  for (double x : {2.0, 9.0})
    EXPECT_NEAR(eval_L(2, 1, 0, x, 1.0, 2.0).value, base_L01(2, x, 2.0, 1.0).value, 1e-13);
}

TEST(Mixed, AdjacentClosureDerivative) {
  const double x = 15.0;
  const double d = derivative([](double t) { return adjacent_closure(2, 3, t, 1.3, 0.7).value; }, x, 1e-3);
  const double f = x * x * ref_j(2, 1.3 * x) * ref_j(3, 0.7 * x);
  EXPECT_LE(std::abs(d - f), 1e-6 * std::max(std::abs(f), 1e-2));
  EXPECT_THROW(adjacent_closure(1, 2, 3.0, 1.0, 2.0), DomainError);
}

TEST(Mixed, BaseDerivative) {
  const double x = 9.0;
  const double d = derivative([](double t) { return base_L01(2, t, 1.0, 2.0).value; }, x, 1e-3);
  const double f = x * x * ref_j(0, x) * ref_j(1, 2 * x);
  EXPECT_LE(std::abs(d - f), 1e-6 * std::abs(f));
}

TEST(Mixed, DerivativeProperty) {
  const double scales[] = {0.7, 1.0, 2.3};
  for (double a : scales)
    for (double b : scales)
      for (int n = -1; n <= 4; ++n)
        for (int k = 0; k <= 8; k += 2)
          for (int l = 1; l <= 8; l += 3) {
            const double x = std::max(first_zero_estimate(k) / a, first_zero_estimate(l) / b) + 3.3;
            const double h = 1e-3 / std::max(a, b);
            const double d =
                derivative([&](double t) { return eval_L(n, k, l, t, a, b).value; }, x, h);
            const double f = std::pow(x, n) * ref_j(k, a * x) * ref_j(l, b * x);
            const double env = std::pow(x, n - 2) / (a * b);
            EXPECT_LE(std::abs(d - f), 1e-6 * std::max(std::abs(f), env))
                << n << " " << k << " " << l << " " << a << " " << b;
          }
}

TEST(Mixed, NOneLadderMatchesOracle) {
  for (int k = 0; k <= 4; ++k) {
    const double r = oracle_L(1, k, k + 1, 5.0, 30.0, 1.0, 1.9);
    EXPECT_LE(std::abs(definite_L(1, k, k + 1, 5.0, 30.0, 1.0, 1.9) - r), 1e-10 * std::max(1.0, std::abs(r)))
        << k;
  }
}

TEST(Mixed, EqualArgumentReduction) {
  for (int n = -1; n <= 3; ++n)
    for (int k = 0; k <= 3; ++k)
      for (int l = k + 1; l <= 5; ++l) {
        const double alpha = 1.7;
        const double direct = definite_L(n, k, l, 4.0, 25.0, alpha, alpha);
        const double scaled = std::pow(alpha, -1.0 - n) * definite_Leq(n, k, l, alpha * 4.0, alpha * 25.0);
        EXPECT_LE(std::abs(direct - scaled), 1e-11 * std::max(1.0, std::abs(scaled))) << n << k << l;
      }
}

TEST(Mixed, EqualArgumentSymmetry) {
  for (int n = -1; n <= 4; ++n)
    for (int k = 0; k <= 4; ++k)
      for (int l = 0; l <= 4; ++l)
        EXPECT_EQ(definite_Leq(n, k, l, 2.0, 19.0), definite_Leq(n, l, k, 2.0, 19.0));
}

TEST(Mixed, LresultIdentity) {
  EXPECT_LT(identity_Lresult_residual(0, 2, 1.0, 2.0, 1.0, 10.0), 1e-9);
  EXPECT_LT(identity_Lresult_residual(2, 2, 1.0, 2.0, 1.0, 10.0), 1e-9);
  EXPECT_EQ(identity_Lresult_residual(1, 1, 1.0, 1.0, 1.0, 10.0), 0.0);
  int cases = 0;
  for (int k = 0; k <= 3; ++k)
    for (int l : {k, k + 1, k + 3})
      for (double beta : {0.6, 2.2}) {
        if (cases == 20) break;
        EXPECT_LT(identity_Lresult_residual(k, l, 1.0, beta, 1.5, 30.0), 1e-9) << k << " " << l;
        ++cases;
      }
  EXPECT_EQ(cases, 20);
}

TEST(Mixed, ClosedFormsAgreeWithRecursion) {
  const EvalOptions no_closed{false};
  for (int k = 0; k <= 5; ++k)
    for (int l = k; l <= 8; ++l)
      for (int n : {0, -1, 1 - k - l, l - k + 2, k + l + 3}) {
        auto kind = match_mixed_closed_form(n, k, l);
        if (!kind || (k == l && *kind == MixedClosedForm::L1)) continue;
        // As for H, deep negative n past l = 5 is checked from the first zero.
        const double a = l <= 5 ? 2.0 : first_zero_estimate(l);
        const double tol = l <= 5 ? 1e-10 : 1e-8;
        const double c = closed_L(*kind, k, l, 40.0).value - closed_L(*kind, k, l, a).value;
        const double r = definite_Leq(n, k, l, a, 40.0, no_closed);
        EXPECT_LE(rel_diff(c, r), tol) << n << " " << k << " " << l;
      }
}

TEST(Mixed, ClosedFormDomainErrors) {
  EXPECT_THROW(closed_L(MixedClosedForm::L1, 2, 2, 1.0), DomainError);
  EXPECT_THROW(closed_L(MixedClosedForm::L2, 1, 2, 1.0), DomainError);
  EXPECT_THROW(closed_L(MixedClosedForm::L2, 0, 0, 1.0), DomainError);
  EXPECT_NEAR(closed_L(MixedClosedForm::L5, 1, 2, 1e-3).value, 0.0, 1e-20);
}

TEST(Mixed, NearDegenerate) {
  EXPECT_THROW(eval_L(0, 0, 1, 5.0, 1.0, 1.0 + 1e-9), NearDegenerate);
}
