#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppco {

enum class ErrorCode {
  NotFound,
  InvalidInput,
  PermissionDenied,
  Conflict,
  InvalidState,
  ValidationFailed,
  ParseError,
  IoError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound: return "not_found";
    case ErrorCode::InvalidInput: return "invalid_input";
    case ErrorCode::PermissionDenied: return "permission_denied";
    case ErrorCode::Conflict: return "conflict";
    case ErrorCode::InvalidState: return "invalid_state";
    case ErrorCode::ValidationFailed: return "validation_failed";
    case ErrorCode::ParseError: return "parse_error";
    case ErrorCode::IoError: return "io_error";
  }
  return "unknown";
}

// Domain failure. Violations found by validate_model are data, not errors;
// this is thrown only when an operation cannot produce its result.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, std::string message) {
  throw Error(code, std::move(message));
}

inline void require(bool cond, ErrorCode code, std::string_view message) {
  if (!cond) throw Error(code, std::string(message));
}

}  // namespace ppco
