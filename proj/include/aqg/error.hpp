#pragma once

#include <stdexcept>
#include <string>

namespace aqg {

/// Raised when an argument or field violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the time stepper when the advective CFL bound is violated.
/// Carries the largest admissible step for the current velocity.
class CflViolation : public std::runtime_error {
 public:
  CflViolation(const std::string& what, double suggested_dt)
      : std::runtime_error(what), suggested_dt_(suggested_dt) {}

  double suggested_dt() const noexcept { return suggested_dt_; }

 private:
  double suggested_dt_;
};

/// Raised when the solution stops being finite.
class NumericalBlowup : public std::runtime_error {
 public:
  NumericalBlowup(const std::string& what, double last_valid_time)
      : std::runtime_error(what), last_valid_time_(last_valid_time) {}

  double last_valid_time() const noexcept { return last_valid_time_; }

 private:
  double last_valid_time_;
};

}  // namespace aqg
