#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "besselquad/single.hpp"
#include "test_support.hpp"

using namespace besselquad;
using namespace testing_support;
using std::numbers::pi;

namespace {

double definite_I(int n, int l, double a, double b, EvalOptions o = {}) {
  return eval_I(n, l, b, o).value - eval_I(n, l, a, o).value;
}

double oracle_I(int n, int l, double a, double b, double alpha = 1.0) {
  return oracle([&](double x) { return std::pow(x, n) * ref_j(l, alpha * x); }, a, b,
                std::abs(alpha));
}

}  // namespace

TEST(Single, SiAtPi) {
  EXPECT_NEAR(eval_I(0, 0, pi).value, 1.8519370520, 1e-10);
  EXPECT_NEAR(eval_I(0, 0, 2.7).value, si(2.7), 1e-15);
}

TEST(Single, ClosedFormI1Definite) {
  const AntiderivativeValue v = eval_I(3, 1, pi);
  EXPECT_EQ(v.path, EvalPath::ClosedForm);
  EXPECT_NEAR(v.value - closed_I(SingleClosedForm::I1, 1, 0.0).value, 3 * pi, 1e-12);
  EXPECT_NEAR(oracle_I(3, 1, 0.0, pi), 3 * pi, 1e-12);
  EXPECT_NEAR(closed_I(SingleClosedForm::I1, 0, pi).value, pi, 1e-13);
}

TEST(Single, ScaledSubstitution) {
  EXPECT_NEAR(eval_I_scaled(0, 0, pi / 2, 2.0).value, si(pi) / 2, 1e-15);
  for (double x : {0.3, 4.0, 17.0})
    EXPECT_EQ(eval_I_scaled(2, 3, x, 1.0).value, eval_I(2, 3, x).value);
  const double neg = eval_I_scaled(2, 0, 5.0, -1.0).value - eval_I_scaled(2, 0, 1.0, -1.0).value;
  EXPECT_NEAR(neg, oracle_I(2, 0, 1.0, 5.0), 1e-12);
  const double odd = eval_I_scaled(1, 3, 9.0, -1.5).value - eval_I_scaled(1, 3, 2.0, -1.5).value;
  EXPECT_NEAR(odd, oracle_I(1, 3, 2.0, 9.0, -1.5), 1e-12);
}

TEST(Single, DomainErrors) {
  EXPECT_THROW(eval_I(0, -1, 1.0), DomainError);
  EXPECT_THROW(eval_I(0, 1, 0.0), DomainError);
  EXPECT_THROW(eval_I_scaled(0, 1, 1.0, 0.0), DomainError);
  EXPECT_THROW(closed_I(SingleClosedForm::I3, 0, 1.0), DomainError);
}

TEST(Single, FiniteAtZeroCondition) {
  EXPECT_TRUE(single_finite_at_zero(0, 0));
  EXPECT_TRUE(single_finite_at_zero(-2, 2));
  EXPECT_FALSE(single_finite_at_zero(-1, 0));
  EXPECT_FALSE(single_finite_at_zero(-3, 1));
}

TEST(Single, DerivativeProperty) {
  for (int n = -2; n <= 5; ++n) {
    for (int l = 0; l <= 12; ++l) {
      for (double x : {first_zero_estimate(l), 23.0, 61.0, 100.0}) {
        const double h = 1e-3;
        const double d = derivative([&](double t) { return eval_I(n, l, t).value; }, x, h);
        const double f = std::pow(x, n) * ref_j(l, x);
        const double env = std::pow(x, n - 1);
        EXPECT_LE(std::abs(d - f), 1e-6 * std::max(std::abs(f), env)) << n << " " << l << " " << x;
      }
    }
  }
}

TEST(Single, MatchesOracle) {
  for (int n = -2; n <= 5; ++n)
    for (int l = 0; l <= 10; l += 2) {
      const double a = std::max(1.0, first_zero_estimate(l)), b = a + 30.0;
      const double ref = oracle_I(n, l, a, b);
      EXPECT_LE(std::abs(definite_I(n, l, a, b) - ref), 1e-10 * std::max(1.0, std::abs(ref)))
          << n << " " << l;
    }
}

TEST(Single, ClosedFormsAgreeWithRecursion) {
  const EvalOptions no_closed{false};
  for (int l = 1; l <= 10; ++l) {
    for (int n : {l + 2, l + 4, 1 - l}) {
      const double c = definite_I(n, l, 2.0, 40.0);
      const double r = definite_I(n, l, 2.0, 40.0, no_closed);
      EXPECT_LE(rel_diff(c, r), 1e-10) << n << " " << l;
    }
  }
}

TEST(Single, TruncationCondition) {
  EXPECT_TRUE(single_recursion_truncates(0, 1));
  EXPECT_TRUE(single_recursion_truncates(2, 3));
  EXPECT_FALSE(single_recursion_truncates(1, 1));
  EXPECT_FALSE(single_recursion_truncates(5, 2));
}

TEST(Single, TruncatedPathMatchesThreeTermPath) {
  const EvalOptions no_closed{false};
  for (int l = 0; l <= 8; ++l)
    for (int n = 1 - l; n <= 1 + l; ++n) {
      if (!single_recursion_truncates(n, l)) continue;
      for (double x : {3.0, 12.5, 40.0}) {
        const double a = eval_I(n, l, x, no_closed).value;
        const double b = eval_I_three_term(n, l, x).value;
        EXPECT_LE(std::abs(a - b), 1e-11 * std::max(1.0, std::abs(b))) << n << " " << l << " " << x;
      }
    }
}

TEST(Single, I3LimitAtZero) {
  // I3 carries the constant that makes it vanish at the origin.
  for (int l = 1; l <= 6; ++l) {
    const double v = closed_I(SingleClosedForm::I3, l, 1e-3).value;
    EXPECT_NEAR(v, 0.0, 1e-5) << l;
  }
}
