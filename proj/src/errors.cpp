#include "curvafield/errors.hpp"

namespace curvafield {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorCode::DegenerateCone: return "DegenerateCone";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidPolygon: return "InvalidPolygon";
    case ErrorCode::GoalInObstacle: return "GoalInObstacle";
    case ErrorCode::NonConforming: return "NonConforming";
    case ErrorCode::TriangulationFailed: return "TriangulationFailed";
    case ErrorCode::GoalOutsideComplex: return "GoalOutsideComplex";
    case ErrorCode::NoSuccessor: return "NoSuccessor";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::GoalReached: return "GoalReached";
    case ErrorCode::StartOutsideDomain: return "StartOutsideDomain";
    case ErrorCode::StartUnreachable: return "StartUnreachable";
    case ErrorCode::EmptyTrajectory: return "EmptyTrajectory";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::KeyMismatch: return "KeyMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidPolygon:
    case ErrorCode::GoalInObstacle:
    case ErrorCode::NonConforming:
    case ErrorCode::GoalOutsideComplex:
    case ErrorCode::StartOutsideDomain:
    case ErrorCode::StartUnreachable:
    case ErrorCode::KeyMismatch:
    case ErrorCode::InvalidConfig:
    case ErrorCode::IoError:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace curvafield
