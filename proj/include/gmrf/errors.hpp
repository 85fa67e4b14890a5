#pragma once

#include <stdexcept>
#include <string>

namespace gmrf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An eliminated block failed the invertibility guard.
struct SingularPivot : Error { using Error::Error; };

struct NotPositiveDefinite : Error { using Error::Error; };

// join() received an embedding that does not fit the target layout.
struct LayoutMismatch : Error { using Error::Error; };

// Gluing operands have incompatible rectangle sizes.
struct ShapeMismatch : Error { using Error::Error; };

struct DimensionMismatch : Error { using Error::Error; };

// Mode polynomial has colliding roots or a root pinned to the unit circle.
struct DegenerateMode : Error { using Error::Error; };

// Genericity assumptions (simple roots, one-dimensional kernels,
// contractive W-operators) fail for the given weight.
struct AssumptionViolated : Error { using Error::Error; };

struct QuadratureNotConverged : Error { using Error::Error; };

struct NotDihedral : Error { using Error::Error; };

// A fold with positivity guarantees was requested on a non-even symbol.
struct NotEven : Error { using Error::Error; };

// Requested shift or gluing exceeds the half-line truncation order.
struct TruncationExceeded : Error { using Error::Error; };

struct ParseError : Error { using Error::Error; };

}  // namespace gmrf
