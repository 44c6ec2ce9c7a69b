#include "imcf/error.hpp"

namespace imcf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::UnequalMultiplicities: return "UnequalMultiplicities";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ROutOfRange: return "ROutOfRange";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::BandInterior: return "BandInterior";
    case ErrorCode::InvalidControl: return "InvalidControl";
    case ErrorCode::StepLimit: return "StepLimit";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::HypothesisUnmet: return "HypothesisUnmet";
    case ErrorCode::Unclassifiable: return "Unclassifiable";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::WrongK: return "WrongK";
    case ErrorCode::FocalProximity: return "FocalProximity";
    case ErrorCode::NoCriticalPoint: return "NoCriticalPoint";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace imcf
