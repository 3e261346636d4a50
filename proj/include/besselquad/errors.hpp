#pragma once

#include <stdexcept>
#include <string>

namespace besselquad {

/// Argument outside the mathematical domain of the requested quantity.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when |alpha - beta| is below the degeneracy guard and no series
/// path is available for the (alpha -/+ beta)-scaled trig primitives.
class NearDegenerate : public std::runtime_error {
 public:
  explicit NearDegenerate(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by checked trig-primitive evaluation for n < -1 at small argument,
/// where no series is available and the recursion cancels badly.
class QuadratureRecommended : public std::runtime_error {
 public:
  explicit QuadratureRecommended(const std::string& what)
      : std::runtime_error(what) {}
};

class NotConverged : public std::runtime_error {
 public:
  explicit NotConverged(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace besselquad
