#include "tprim/error.hpp"

namespace tprim {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::BadShape: return "BadShape";
    case ErrorKind::BadLimit: return "BadLimit";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::KOutOfRange: return "KOutOfRange";
    case ErrorKind::TOutOfRange: return "TOutOfRange";
    case ErrorKind::OrderTooSmall: return "OrderTooSmall";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::SpaceTooLarge: return "SpaceTooLarge";
    case ErrorKind::SelfCheckFailed: return "SelfCheckFailed";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace tprim
