#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace inflow {

enum class ErrorKind {
  InvalidArgument,
  TransitionalState,
  OutOfDomain,
  NoBracket,
  InadmissibleBoundaryValue,
  Divergence,
  StepUnderflow,
  InsufficientTail,
  EnvelopeViolated,
  InvalidWaveOrdering,
  CompatibilityViolated,
  PositivityViolated,
  NonFinite,
  Config,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` carries the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::TransitionalState: return "TransitionalState";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::InadmissibleBoundaryValue: return "InadmissibleBoundaryValue";
    case ErrorKind::Divergence: return "Divergence";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::InsufficientTail: return "InsufficientTail";
    case ErrorKind::EnvelopeViolated: return "EnvelopeViolated";
    case ErrorKind::InvalidWaveOrdering: return "InvalidWaveOrdering";
    case ErrorKind::CompatibilityViolated: return "CompatibilityViolated";
    case ErrorKind::PositivityViolated: return "PositivityViolated";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace inflow
