#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fanih {

enum class ErrorKind {
  Parse,
  BadRay,
  NotPointed,
  NotAFan,
  UnknownCone,
  NotCoveringPair,
  NotASubdivision,
  DimensionTooSmall,
  DegeneratePolytope,
  CapTooSmall,
  NotInCategory,
  NegativeMultiplicity,
  SignInconsistency,
  NotStrictlyConvex,
  CheckFailed,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::BadRay: return "BadRay";
    case ErrorKind::NotPointed: return "NotPointed";
    case ErrorKind::NotAFan: return "NotAFan";
    case ErrorKind::UnknownCone: return "UnknownCone";
    case ErrorKind::NotCoveringPair: return "NotCoveringPair";
    case ErrorKind::NotASubdivision: return "NotASubdivision";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::DegeneratePolytope: return "DegeneratePolytope";
    case ErrorKind::CapTooSmall: return "CapTooSmall";
    case ErrorKind::NotInCategory: return "NotInCategory";
    case ErrorKind::NegativeMultiplicity: return "NegativeMultiplicity";
    case ErrorKind::SignInconsistency: return "SignInconsistency";
    case ErrorKind::NotStrictlyConvex: return "NotStrictlyConvex";
    case ErrorKind::CheckFailed: return "CheckFailed";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fanih
