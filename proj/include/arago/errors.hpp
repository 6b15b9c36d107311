#pragma once

#include <stdexcept>
#include <string>

namespace arago {

/// Point outside the paraxial evaluation domain (0 < y <= 2 m, |x| <= 25 mm).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Rejected configuration or malformed input.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical breakdown (stagnation, non-finite values, exhausted iterations).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace arago
