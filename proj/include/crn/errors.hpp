#pragma once

#include <stdexcept>
#include <string>

namespace crn {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed network file. Carries the 1-based line number when known.
struct ParseError : Error {
  ParseError(int line_no, const std::string& what)
      : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + what : what),
        line(line_no) {}
  int line = 0;
};

/// The undirected reaction graph is not connected; split the file instead.
struct DisconnectedNetwork : Error {
  using Error::Error;
};

/// A diagonal minor fell inside the guard band around the decision
/// threshold; the network is too ill-conditioned to classify reliably.
struct IndeterminateMinor : Error {
  using Error::Error;
};

/// Operation requires an indecomposable (weakly reversible) reaction matrix.
struct NotWeaklyReversible : Error {
  using Error::Error;
};

/// A linear solve produced a non-positive equilibrium component.
struct NonPositiveEquilibrium : Error {
  using Error::Error;
};

/// The non-target restriction of the reaction matrix is numerically singular.
struct SingularSubmatrix : Error {
  using Error::Error;
};

/// Implicit-step linear solve failed to reach the requested residual.
struct SolverDivergence : Error {
  using Error::Error;
};

/// A component functional was requested for the wrong component type.
struct WrongComponentKind : Error {
  using Error::Error;
};

/// Entropy never decayed enough to fit a rate.
struct InsufficientDecay : Error {
  using Error::Error;
};

/// The constructive entropy bound is only available when all species diffuse.
struct DegenerateDiffusion : Error {
  using Error::Error;
};

}  // namespace crn
