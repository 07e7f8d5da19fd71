#pragma once

#include <stdexcept>
#include <string>

namespace cuntzk {

enum class ErrorCode {
  ParseError,
  NotAssociative,
  NoIdentity,
  MissingInverse,
  UnsupportedParameter,
  UnknownIrrep,
  TableMismatch,
  DimensionMismatch,
  DimensionTooSmall,
  ValidationFailed,
  MatricesUnavailable,
  NotFaithful,
  DegenerateEigenvectors,
  IntegralityViolation,
  NotInvariant,
};

const char* error_name(ErrorCode code);

/// Process exit code for an error: 2 parse, 3 validation, 4 hypothesis
/// violation, 5 internal invariant failure.
int exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cuntzk
