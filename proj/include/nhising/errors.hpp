#pragma once

#include <stdexcept>
#include <string>

namespace nhising {

// Base for every numeric failure raised by this library.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : NumericError {
  using NumericError::NumericError;
};

// Requested a gapped-phase quantity at gapless parameters (or vice versa).
struct GaplessPhase : NumericError {
  using NumericError::NumericError;
};
struct GappedPhase : NumericError {
  using NumericError::NumericError;
};

// |Lambda(k)| vanished: eigenvalues and eigenvectors coalesce.
struct ExceptionalPoint : NumericError {
  using NumericError::NumericError;
};

struct QuadratureFailure : NumericError {
  using NumericError::NumericError;
};

struct NonConvergence : NumericError {
  using NumericError::NumericError;
};
struct PoleAtOne : NumericError {
  using NumericError::NumericError;
};

// a(t) pole in the gapless stationary amplitudes; caller must resample t.
struct Singular : NumericError {
  using NumericError::NumericError;
};

struct StepTooSmall : NumericError {
  using NumericError::NumericError;
};
struct DegenerateFit : NumericError {
  using NumericError::NumericError;
};
struct UndefinedRegime : NumericError {
  using NumericError::NumericError;
};

struct EigendecompositionFailure : NumericError {
  using NumericError::NumericError;
};
struct BasisBreakdown : NumericError {
  using NumericError::NumericError;
};

}  // namespace nhising
