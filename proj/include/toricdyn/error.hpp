#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toricdyn {

enum class ErrorKind {
  Singular,
  DimensionMismatch,
  OutOfRange,
  NotStronglyConvex,
  DimensionGap,
  Incompatible,
  UnsupportedTarget,
  GenericityFailure,
  Exhausted,
  InvalidInput,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Singular: return "SINGULAR";
    case ErrorKind::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorKind::OutOfRange: return "OUT_OF_RANGE";
    case ErrorKind::NotStronglyConvex: return "NOT_STRONGLY_CONVEX";
    case ErrorKind::DimensionGap: return "DIMENSION_GAP";
    case ErrorKind::Incompatible: return "INCOMPATIBLE";
    case ErrorKind::UnsupportedTarget: return "UNSUPPORTED_TARGET";
    case ErrorKind::GenericityFailure: return "GENERICITY_FAILURE";
    case ErrorKind::Exhausted: return "EXHAUSTED";
    case ErrorKind::InvalidInput: return "INVALID_INPUT";
  }
  return "UNKNOWN";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace toricdyn
