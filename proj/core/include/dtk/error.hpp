#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dtk {

enum class ErrorCode {
  InvalidArgument,
  BracketFailure,
  DegenerateParameter,
  PoleAtParameter,
  NotOnVariety,
  InvalidKnot,
  NoRootFound,
  OutOfRange,
  ClassificationMismatch,
  SeedFailure,
  ContinuationStall,
  UnwrapViolation,
  DivisionByZero,
  InsufficientTail,
  NotConverged,
  OutOfCase,
  CaseNotPermitted,
};

inline std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// front ends can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Numerical failures carry the parameter value at which they occurred.
class NumericalError : public Error {
 public:
  NumericalError(ErrorCode code, const std::string& what, double at)
      : Error(code, what + " (at s=" + format_double(at) + ")"), at_(at) {}

  double at() const noexcept { return at_; }

 private:
  static std::string format_double(double v);
  double at_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::DegenerateParameter: return "DegenerateParameter";
    case ErrorCode::PoleAtParameter: return "PoleAtParameter";
    case ErrorCode::NotOnVariety: return "NotOnVariety";
    case ErrorCode::InvalidKnot: return "InvalidKnot";
    case ErrorCode::NoRootFound: return "NoRootFound";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ClassificationMismatch: return "ClassificationMismatch";
    case ErrorCode::SeedFailure: return "SeedFailure";
    case ErrorCode::ContinuationStall: return "ContinuationStall";
    case ErrorCode::UnwrapViolation: return "UnwrapViolation";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::InsufficientTail: return "InsufficientTail";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::OutOfCase: return "OutOfCase";
    case ErrorCode::CaseNotPermitted: return "CaseNotPermitted";
  }
  return "Unknown";
}

}  // namespace dtk
