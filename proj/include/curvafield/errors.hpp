#pragma once

#include <stdexcept>
#include <string>

namespace curvafield {

enum class ErrorCode {
  ZeroVector,
  DegenerateSimplex,
  DegenerateCone,
  ParseError,
  InvalidPolygon,
  GoalInObstacle,
  NonConforming,
  TriangulationFailed,
  GoalOutsideComplex,
  NoSuccessor,
  OutsideDomain,
  GoalReached,
  StartOutsideDomain,
  StartUnreachable,
  EmptyTrajectory,
  TooShort,
  InvalidWeights,
  NotConverged,
  KeyMismatch,
  InvalidConfig,
  IoError,
};

const char* to_string(ErrorCode code);

// Input errors map to CLI exit status 2, everything else to 3.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace curvafield
