#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace equipkit {

enum class ErrorCode {
  ParseError,
  ValidationError,
  MissingComposite,
  NonAssociative,
  BadUnit,
  NerveUnbounded,
  ClosureBudgetExceeded,
  SearchBudgetExceeded,
  EnumerationBudgetExceeded,
  CompositionMismatch,
  BoundaryMismatch,
  NotACollage,
  IncompatibleBoundary,
  CoverIncomplete,
  RestrictionMismatch,
  TruncationRequired,
  VerificationFailed,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::MissingComposite: return "MissingComposite";
    case ErrorCode::NonAssociative: return "NonAssociative";
    case ErrorCode::BadUnit: return "BadUnit";
    case ErrorCode::NerveUnbounded: return "NerveUnbounded";
    case ErrorCode::ClosureBudgetExceeded: return "ClosureBudgetExceeded";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorCode::CompositionMismatch: return "CompositionMismatch";
    case ErrorCode::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorCode::NotACollage: return "NotACollage";
    case ErrorCode::IncompatibleBoundary: return "IncompatibleBoundary";
    case ErrorCode::CoverIncomplete: return "CoverIncomplete";
    case ErrorCode::RestrictionMismatch: return "RestrictionMismatch";
    case ErrorCode::TruncationRequired: return "TruncationRequired";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

/// Every failure raised by the kernel. `detail` carries the offending data.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg, nlohmann::json detail = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + msg),
        code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const { return code_; }
  const nlohmann::json& detail() const { return detail_; }

  nlohmann::json to_json() const {
    nlohmann::json j{{"error", to_string(code_)}, {"message", what()}};
    if (!detail_.is_null()) j["detail"] = detail_;
    return j;
  }

 private:
  ErrorCode code_;
  nlohmann::json detail_;
};

inline bool is_budget_error(ErrorCode c) {
  return c == ErrorCode::ClosureBudgetExceeded || c == ErrorCode::SearchBudgetExceeded ||
         c == ErrorCode::EnumerationBudgetExceeded;
}

}  // namespace equipkit
