#pragma once

#include <string_view>

namespace besselquad {

/// How an antiderivative value was produced.
enum class EvalPath { ClosedForm, Recursion, Series };

inline std::string_view to_string(EvalPath p) {
  switch (p) {
    case EvalPath::ClosedForm: return "closed_form";
    case EvalPath::Recursion: return "recursion";
    case EvalPath::Series: return "series";
  }
  return "unknown";
}

/// A value of an indefinite integral under the library's fixed
/// constant-of-integration convention. Only differences of two values with
/// the same parameters are meaningful as definite integrals.
struct AntiderivativeValue {
  double value = 0.0;
  EvalPath path = EvalPath::Recursion;
};

struct EvalOptions {
  // Use the known closed forms where (n, l) matches one; otherwise recurse all
  // the way to the trigonometric base cases.
  bool use_closed_forms = true;
};

namespace detail {

// Working precision of the recursion engines. The recursions cancel large
// intermediate terms, so they run in extended precision and round once.
using real = long double;

inline real sign_pow(int l) { return (l % 2 == 0) ? real(1) : real(-1); }

template <class T>
T ipow(T x, int n) {
  if (n < 0) return T(1) / ipow(x, -n);
  T r = 1;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace detail

}  // namespace besselquad
