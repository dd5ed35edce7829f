#pragma once

#include <stdexcept>
#include <string>

namespace tprim {

enum class ErrorKind {
  IndexOutOfRange,
  ArityMismatch,
  BadShape,
  BadLimit,
  TooLarge,
  EmptyFamily,
  KOutOfRange,
  TOutOfRange,
  OrderTooSmall,
  DimensionTooLarge,
  SpaceTooLarge,
  SelfCheckFailed,
  // A published theorem failed on a computed value; always an implementation bug.
  InvariantViolation,
  ParseError,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tprim
