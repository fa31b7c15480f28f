#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ellcoh {

enum class ErrorCode {
  ComplexNotExactable,
  FieldMismatch,
  DimensionMismatch,
  NegativeDegree,
  BadMultiIndex,
  BoundExceeded,
  RankOutOfRange,
  Underdetermined,
  Inconsistent,
  ValidationFailed,
  WrongDimension,
  UnknownPreset,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ComplexNotExactable: return "COMPLEX_NOT_EXACTABLE";
    case ErrorCode::FieldMismatch: return "FIELD_MISMATCH";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::NegativeDegree: return "NEGATIVE_DEGREE";
    case ErrorCode::BadMultiIndex: return "BAD_MULTI_INDEX";
    case ErrorCode::BoundExceeded: return "BOUND_EXCEEDED";
    case ErrorCode::RankOutOfRange: return "RANK_OUT_OF_RANGE";
    case ErrorCode::Underdetermined: return "UNDERDETERMINED";
    case ErrorCode::Inconsistent: return "INCONSISTENT";
    case ErrorCode::ValidationFailed: return "VALIDATION_FAILED";
    case ErrorCode::WrongDimension: return "WRONG_DIMENSION";
    case ErrorCode::UnknownPreset: return "UNKNOWN_PRESET";
    case ErrorCode::ParseError: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ellcoh
