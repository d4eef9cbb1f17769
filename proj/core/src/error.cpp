#include "twosphere/error.hpp"

namespace twosphere {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingKey: return "MissingKey";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::InvalidPolarization: return "InvalidPolarization";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::NonManifoldEdge: return "NonManifoldEdge";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorCode::SolverSingular: return "SolverSingular";
    case ErrorCode::TooCloseToBoundary: return "TooCloseToBoundary";
    case ErrorCode::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

bool is_config_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingKey:
    case ErrorCode::InvalidValue:
    case ErrorCode::InvalidPolarization:
    case ErrorCode::NonPositive:
    case ErrorCode::ResolutionTooCoarse:
    case ErrorCode::Io:
      return true;
    default:
      return false;
  }
}

}  // namespace twosphere
