#include "helmbie/error.hpp"

namespace helmbie {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonZeroEndpoints: return "NonZeroEndpoints";
    case ErrorCode::NonMonotoneX: return "NonMonotoneX";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::TooFewPanels: return "TooFewPanels";
    case ErrorCode::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorCode::NonPositiveArgument: return "NonPositiveArgument";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::UnsupportedSector: return "UnsupportedSector";
    case ErrorCode::InvalidWavenumber: return "InvalidWavenumber";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::SourceInsideDomain: return "SourceInsideDomain";
    case ErrorCode::InvalidMesh: return "InvalidMesh";
    case ErrorCode::ExcitationMismatch: return "ExcitationMismatch";
    case ErrorCode::ProfileBelowAxis: return "ProfileBelowAxis";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::PointTooCloseToBoundary: return "PointTooCloseToBoundary";
    case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorCode::CornerNode: return "CornerNode";
    case ErrorCode::ConeViolation: return "ConeViolation";
    case ErrorCode::ComplexWavenumber: return "ComplexWavenumber";
    case ErrorCode::CircleOutsideDomain: return "CircleOutsideDomain";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::SolverFailure: return "SolverFailure";
  }
  return "Unknown";
}

}  // namespace helmbie
