#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace helmbie {

enum class ErrorCode {
  // geometry
  NonZeroEndpoints,
  NonMonotoneX,
  TooFewPoints,
  TooFewPanels,
  RadiusTooLarge,
  // special functions
  NonPositiveArgument,
  ZeroArgument,
  UnsupportedSector,
  // kernels
  InvalidWavenumber,
  CoincidentPoints,
  SourceInsideDomain,
  // bie core
  InvalidMesh,
  ExcitationMismatch,
  ProfileBelowAxis,
  SingularSystem,
  // postprocess
  PointTooCloseToBoundary,
  PointOutsideDomain,
  CornerNode,
  ConeViolation,
  ComplexWavenumber,
  CircleOutsideDomain,
  PreconditionViolated,
  // cli
  ConfigInvalid,
  SolverFailure,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace helmbie
