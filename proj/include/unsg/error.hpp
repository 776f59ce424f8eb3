#pragma once

#include <stdexcept>
#include <string>

namespace unsg {

// Stable error identifiers. CLI maps ParseError/BadInput-style codes to
// exit code 2 and NonConvergence to exit code 1.
enum class ErrorCode {
  OutOfRangeNeighbor,
  AsymmetricUndirectedEdge,
  DuplicateNeighbor,
  OutOfRangeVertex,
  InvalidScenario,
  GameOver,
  GameNotOver,
  IllegalMove,
  PathExplosion,
  NoFeasiblePath,
  PolicyIncompatible,
  StateSpaceTooLarge,
  EmptyPathSet,
  WeightMismatch,
  DimensionMismatch,
  NonConvergence,
  InfoCaseUnsupported,
  TreeTooLarge,
  ParseError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace unsg
