#pragma once

#include <stdexcept>
#include <string>

namespace logprod {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Pole of a formula (division by a vanishing factor such as K-1).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Evaluation at a singular locus of a production function.
class SingularityError : public std::runtime_error {
 public:
  SingularityError(const std::string& message, std::string locus)
      : std::runtime_error(message + " [locus: " + locus + "]"),
        locus_(std::move(locus)) {}
  const std::string& locus() const noexcept { return locus_; }

 private:
  std::string locus_;
};

/// Operation not defined for the given production-function family.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Iterative solver failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least-squares fit failed on every start.
class FitError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// Malformed input file.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, long line)
      : std::runtime_error(message + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

/// Well-formed but semantically invalid input data.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace logprod
