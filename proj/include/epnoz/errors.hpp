#pragma once

#include <stdexcept>
#include <string>

namespace epnoz {

/// Base class for every error raised by the solver library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// State functions left the physical branch (density law / sound speed).
struct NonPositiveArgument : Error {
  using Error::Error;
};

// |c^2 - u1^2| fell under the hyperbolic-degeneracy guard.
struct SonicDenominator : Error {
  using Error::Error;
};

// Streamwise velocity slot u + q1 + r2 is too close to stagnation.
struct StagnationDenominator : Error {
  using Error::Error;
};

// The 1D profile reached the sonic density inside the requested domain.
struct SonicEncounter : Error {
  double x1;
  explicit SonicEncounter(double where, const std::string& what)
      : Error(what), x1(where) {}
};

// Adaptive stepping underflowed (blow-up proximity).
struct StepFailure : Error {
  using Error::Error;
};

struct LengthExceedsCritical : Error {
  using Error::Error;
};

struct GridMismatch : Error {
  using Error::Error;
};

struct SingularSystem : Error {
  using Error::Error;
};

struct ResidualTooLarge : Error {
  using Error::Error;
};

struct MaxIterExceeded : Error {
  using Error::Error;
};

struct IterateEscapedSet : Error {
  using Error::Error;
};

// Inlet streamfunction failed to be strictly increasing.
struct NonMonotoneStream : Error {
  using Error::Error;
};

// Discrete divergence of the momentum field too large for a streamfunction.
struct DivergenceTooLarge : Error {
  using Error::Error;
};

struct TruncationTooHigh : Error {
  using Error::Error;
};

struct NotApplicable : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line;
  ParseError(int line_no, const std::string& what) : Error(what), line(line_no) {}
};

struct ValidationError : Error {
  using Error::Error;
};

}  // namespace epnoz
