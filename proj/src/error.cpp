#include "qop/error.hpp"

namespace qop {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionOverflow: return "DimensionOverflow";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidEffect: return "InvalidEffect";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidObservable: return "InvalidObservable";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::InvalidTransition: return "InvalidTransition";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::OverlappingLabels: return "OverlappingLabels";
    case ErrorCode::InvalidWitness: return "InvalidWitness";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotCompletelyPositive: return "NotCompletelyPositive";
    case ErrorCode::NotTraceNonIncreasing: return "NotTraceNonIncreasing";
    case ErrorCode::InvalidInstrument: return "InvalidInstrument";
    case ErrorCode::UnknownCheck: return "UnknownCheck";
    case ErrorCode::UnknownSearch: return "UnknownSearch";
    case ErrorCode::BadSizes: return "BadSizes";
    case ErrorCode::SingularNormalizer: return "SingularNormalizer";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace qop
