#pragma once

#include <stdexcept>
#include <string>

namespace rfsense {

/// Argument outside the physical domain of a formula (negative rate, T <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inconsistent scenario: bad topology/frequency combination, bad config key.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Linear algebra failure (singular drift matrix).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Drift matrix has an eigenvalue with non-negative real part.
class UnstableModelError : public std::runtime_error {
 public:
  UnstableModelError(const std::string& what, double max_real_part)
      : std::runtime_error(what), max_real_part_(max_real_part) {}
  double max_real_part() const noexcept { return max_real_part_; }

 private:
  double max_real_part_;
};

/// The perturbation produces no first-order change at the rf port.
class SignalNullError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closed-form expression was called outside its symmetry assumptions.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rfsense
