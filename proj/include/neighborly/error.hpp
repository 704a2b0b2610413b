#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace neighborly {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  DegenerateSimplex,
  NonOrthonormalBasis,
  WindowTooSmall,
  TooManyPoints,
  DegeneracyDetected,
  TooManyHalfspaces,
  EmptyRegion,
  DegenerateFacet,
  CensusMismatch,
  UnboundedAfterClip,
  FacetLost,
  UnionNotConvex,
  InvalidFlatDimension,
  DegenerateTriangle,
  UnboundedPolytope,
  IOError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw GeometryError(code, what);
}

}  // namespace neighborly
