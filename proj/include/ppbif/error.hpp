#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppbif {

enum class ErrorCode {
  MissingSymbol,
  UnknownSymbol,
  NonPositiveValue,
  ConstraintViolation,
  OutOfDomain,
  NullclineNonpositive,
  NoCEPAtCriticalPoint,
  PatternViolation,
  NoConvergence,
  SpectralConditionFailed,
  DegenerateCrossing,
  InsufficientSamples,
  NonFiniteState,
  EmptyLocus,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. The code identifies the contract that was
/// violated; the message names the offending symbol or constraint.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ppbif
