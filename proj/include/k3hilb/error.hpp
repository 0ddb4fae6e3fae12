#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace k3hilb {

enum class ErrorKind {
  InvalidInput,
  SquareRadicand,
  UnsupportedN,
  InvalidNorm,
  NotAnIsometry,
  NotPrimitive,
  NonPositiveSquare,
  NotIntegral,
  InternalInconsistency,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::SquareRadicand: return "SquareRadicand";
    case ErrorKind::UnsupportedN: return "UnsupportedN";
    case ErrorKind::InvalidNorm: return "InvalidNorm";
    case ErrorKind::NotAnIsometry: return "NotAnIsometry";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::NonPositiveSquare: return "NonPositiveSquare";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when two independently computed quantities disagree. Always a bug.
inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw Error(ErrorKind::InternalInconsistency, what);
}

}  // namespace k3hilb
