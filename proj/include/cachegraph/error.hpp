#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cachegraph {

enum class ErrorCode {
  NotPrimePower,
  InvalidArgs,
  CapExceeded,
  NotDirect,
  NotRegular,
  InvalidLineGraph,
  InconsistentCover,
  InvalidCover,
  DimensionMismatch,
  SchemaError,
  InternalError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrimePower: return "NotPrimePower";
    case ErrorCode::InvalidArgs: return "InvalidArgs";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotDirect: return "NotDirect";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::InvalidLineGraph: return "InvalidLineGraph";
    case ErrorCode::InconsistentCover: return "InconsistentCover";
    case ErrorCode::InvalidCover: return "InvalidCover";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

}  // namespace cachegraph
