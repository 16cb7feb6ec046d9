#ifndef ANTIBIDIAG_ERROR_HPP
#define ANTIBIDIAG_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace antibidiag {

enum class ErrorCode {
  // input validation
  EmptyInput,
  NonFinite,
  NonPositiveLead,
  NotAlternating,
  NotStrictlyDecreasingModulus,
  NotDecreasing,
  NonPositive,
  NonPositiveEntry,
  StructuralZero,
  DuplicateRoots,
  TooSmall,
  // numerical breakdown
  NonPositiveA,
  TerminalMismatch,
  InterlaceViolation,
  NoSignChange,
  // usage / contract
  IndexOutOfRange,
  SizeMismatch,
  NotTridiagonal,
  TooLarge,
  BackendUnsupported,
  MalformedInput,
};

enum class ErrorCategory { Validation, Numerical, Usage };

constexpr std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NonPositiveLead: return "NonPositiveLead";
    case ErrorCode::NotAlternating: return "NotAlternating";
    case ErrorCode::NotStrictlyDecreasingModulus: return "NotStrictlyDecreasingModulus";
    case ErrorCode::NotDecreasing: return "NotDecreasing";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::StructuralZero: return "StructuralZero";
    case ErrorCode::DuplicateRoots: return "DuplicateRoots";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::NonPositiveA: return "NonPositiveA";
    case ErrorCode::TerminalMismatch: return "TerminalMismatch";
    case ErrorCode::InterlaceViolation: return "InterlaceViolation";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NotTridiagonal: return "NotTridiagonal";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BackendUnsupported: return "BackendUnsupported";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

constexpr ErrorCategory error_category(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput:
    case ErrorCode::NonFinite:
    case ErrorCode::NonPositiveLead:
    case ErrorCode::NotAlternating:
    case ErrorCode::NotStrictlyDecreasingModulus:
    case ErrorCode::NotDecreasing:
    case ErrorCode::NonPositive:
    case ErrorCode::NonPositiveEntry:
    case ErrorCode::StructuralZero:
    case ErrorCode::DuplicateRoots:
    case ErrorCode::TooSmall:
      return ErrorCategory::Validation;
    case ErrorCode::NonPositiveA:
    case ErrorCode::TerminalMismatch:
    case ErrorCode::InterlaceViolation:
    case ErrorCode::NoSignChange:
      return ErrorCategory::Numerical;
    default:
      return ErrorCategory::Usage;
  }
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return error_category(code_); }

 private:
  ErrorCode code_;
};

}  // namespace antibidiag

#endif  // ANTIBIDIAG_ERROR_HPP
