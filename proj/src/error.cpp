#include "cuntzk/error.hpp"

namespace cuntzk {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::MissingInverse: return "MissingInverse";
    case ErrorCode::UnsupportedParameter: return "UnsupportedParameter";
    case ErrorCode::UnknownIrrep: return "UnknownIrrep";
    case ErrorCode::TableMismatch: return "TableMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::MatricesUnavailable: return "MatricesUnavailable";
    case ErrorCode::NotFaithful: return "NotFaithful";
    case ErrorCode::DegenerateEigenvectors: return "DegenerateEigenvectors";
    case ErrorCode::IntegralityViolation: return "IntegralityViolation";
    case ErrorCode::NotInvariant: return "NotInvariant";
  }
  return "Unknown";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
      return 2;
    case ErrorCode::NotFaithful:
      return 4;
    case ErrorCode::DegenerateEigenvectors:
    case ErrorCode::IntegralityViolation:
    case ErrorCode::NotInvariant:
      return 5;
    default:
      return 3;
  }
}

}  // namespace cuntzk
