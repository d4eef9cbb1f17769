#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twosphere {

enum class ErrorCode {
  MissingKey,
  InvalidValue,
  InvalidPolarization,
  NonPositive,
  ResolutionTooCoarse,
  NonManifoldEdge,
  ZeroArgument,
  UnsupportedCombination,
  SolverSingular,
  TooCloseToBoundary,
  TruncationInsufficient,
  DegenerateFit,
  Io,
};

std::string_view to_string(ErrorCode code);

// Single exception type; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// True for errors caused by bad user input (config or CLI arguments).
bool is_config_error(ErrorCode code);

}  // namespace twosphere
