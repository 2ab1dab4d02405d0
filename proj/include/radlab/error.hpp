#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace radlab {

enum class ErrorCode {
  InvalidArgument,
  InvalidStep,
  NonPositiveWarping,
  OutOfDomain,
  NotSubcritical,
  Inconclusive,
  UnsupportedAlpha,
  NonPositiveQuotient,
  MassExceeded,
  UnsupportedExponent,
  SingularPotential,
  NonPositiveG,
  UnboundedRatio,
  NoInteriorDof,
  NotCoercive,
  NonConvergence,
  DeltaViolated,
  LadderStall,
  DimensionTooLow,
  ConfigError,
  IoError,
};

constexpr std::string_view error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidStep: return "InvalidStep";
    case ErrorCode::NonPositiveWarping: return "NonPositiveWarping";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NotSubcritical: return "NotSubcritical";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::UnsupportedAlpha: return "UnsupportedAlpha";
    case ErrorCode::NonPositiveQuotient: return "NonPositiveQuotient";
    case ErrorCode::MassExceeded: return "MassExceeded";
    case ErrorCode::UnsupportedExponent: return "UnsupportedExponent";
    case ErrorCode::SingularPotential: return "SingularPotential";
    case ErrorCode::NonPositiveG: return "NonPositiveG";
    case ErrorCode::UnboundedRatio: return "UnboundedRatio";
    case ErrorCode::NoInteriorDof: return "NoInteriorDof";
    case ErrorCode::NotCoercive: return "NotCoercive";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::DeltaViolated: return "DeltaViolated";
    case ErrorCode::LadderStall: return "LadderStall";
    case ErrorCode::DimensionTooLow: return "DimensionTooLow";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace radlab
