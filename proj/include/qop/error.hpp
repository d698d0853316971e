#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qop {

enum class ErrorCode {
  NotHermitian,
  NotPSD,
  NumericalFailure,
  DimensionMismatch,
  DimensionOverflow,
  NotSquare,
  NonFinite,
  InvalidEffect,
  InvalidState,
  InvalidObservable,
  UnknownLabel,
  DuplicateLabel,
  NotSurjective,
  LabelMismatch,
  InvalidTransition,
  InvalidDistribution,
  BadWeights,
  OverlappingLabels,
  InvalidWitness,
  NotNormalized,
  NotCompletelyPositive,
  NotTraceNonIncreasing,
  InvalidInstrument,
  UnknownCheck,
  UnknownSearch,
  BadSizes,
  SingularNormalizer,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qop
