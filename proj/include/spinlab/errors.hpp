#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spinlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GridError : public Error {
 public:
  using Error::Error;
};

class StencilError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

// A time integrator produced non-finite values (or left its admissible
// region) at the given step.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, long step) : Error(what), step_(step) {}
  long step() const noexcept { return step_; }

 private:
  long step_;
};

class ReductionError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class BreakingError : public Error {
 public:
  BreakingError(const std::string& what, double t_break, double y_break)
      : Error(what), t_break_(t_break), y_break_(y_break) {}
  double t_break() const noexcept { return t_break_; }
  double y_break() const noexcept { return y_break_; }

 private:
  double t_break_;
  double y_break_;
};

class ImmersionError : public Error {
 public:
  using Error::Error;
};

class MetricError : public Error {
 public:
  using Error::Error;
};

// Surface coordinates are not in the E = 1, F = 0 gauge.
class GaugeError : public Error {
 public:
  using Error::Error;
};

class InstabilityError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

// Collects every violation found while validating a configuration.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace spinlab
