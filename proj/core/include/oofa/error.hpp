#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace oofa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something malformed or out of range. The CLI maps these to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class CapacityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnsupportedModelError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Well-formed input that the numerics cannot handle. The CLI maps these to exit code 1.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A model matrix without full column rank. `dependent_terms()` lists the
/// columns that are linear combinations of earlier columns.
class EstimabilityError : public NumericalError {
 public:
  EstimabilityError(const std::string& what, std::vector<std::string> dependent_terms)
      : NumericalError(what), dependent_(std::move(dependent_terms)) {}

  const std::vector<std::string>& dependent_terms() const noexcept { return dependent_; }

 private:
  std::vector<std::string> dependent_;
};

class SaturatedModelError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SearchFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace oofa
