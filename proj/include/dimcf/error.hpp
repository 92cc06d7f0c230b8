#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dimcf {

enum class ErrorKind {
  ParseError,
  ZeroDenominator,
  NegativeRadicand,
  PrecisionExhausted,
  NotEnoughDigits,
  PoleAtInput,
  NotFactorable,
  NotUnimodular,
  DegenerateStep,
  DimensionMismatch,
  NotEnoughSteps,
  ZeroLeadingEntry,
  EllipticInput,
  IdentityInput,
  NotHyperbolic,
  ZeroLeading,
  NonPositiveUnit,
  RankMismatch,
  OutOfRange,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::NegativeRadicand: return "NegativeRadicand";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::NotEnoughDigits: return "NotEnoughDigits";
    case ErrorKind::PoleAtInput: return "PoleAtInput";
    case ErrorKind::NotFactorable: return "NotFactorable";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::DegenerateStep: return "DegenerateStep";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotEnoughSteps: return "NotEnoughSteps";
    case ErrorKind::ZeroLeadingEntry: return "ZeroLeadingEntry";
    case ErrorKind::EllipticInput: return "EllipticInput";
    case ErrorKind::IdentityInput: return "IdentityInput";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::ZeroLeading: return "ZeroLeading";
    case ErrorKind::NonPositiveUnit: return "NonPositiveUnit";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::OutOfRange: return "OutOfRange";
  }
  return "Unknown";
}

/// Every failure raised by the library. The kind is stable and machine
/// readable; `index()` carries the depth or step reached when relevant.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message,
                              std::optional<std::size_t> index = std::nullopt) {
  throw Error(kind, message, index);
}

}  // namespace dimcf
