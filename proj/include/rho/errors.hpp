#pragma once

#include <stdexcept>
#include <string>

namespace rho {

/// A precondition of an operation was not met by the caller.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not reach its requested accuracy.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Candidate densities evaluated at the sample are (numerically) linearly dependent.
class DegenerateCandidates : public NumericalFailure {
 public:
  DegenerateCandidates(const std::string& what, double condition_number)
      : NumericalFailure(what), condition_number_(condition_number) {}
  double condition_number() const noexcept { return condition_number_; }

 private:
  double condition_number_;
};

/// Malformed or inconsistent user configuration (CLI / JSON).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rho
