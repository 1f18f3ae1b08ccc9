#pragma once

#include <stdexcept>
#include <string>

namespace nrt {

// Base class for all toolkit errors. Messages name the violated precondition.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input that fails structural validation (bad file, ragged array, NaN entry).
struct InvalidInput : Error {
  using Error::Error;
};

// A matrix claimed Hermitian exceeds the hermiticity tolerance.
struct NotHermitian : Error {
  using Error::Error;
};

// A pivot fell below the singularity threshold during elimination.
struct Singular : Error {
  using Error::Error;
};

// Re(A) is not positive definite where accretivity is required.
struct NotAccretive : Error {
  using Error::Error;
};

// 0 lies in (or cannot be separated from) the numerical range.
struct ZeroInRange : Error {
  using Error::Error;
};

// Eigenvector basis too ill-conditioned for the spectral power route.
struct Defective : Error {
  using Error::Error;
};

// An eigenvalue (or the numerical range) touches the branch cut (-inf, 0].
struct BranchCut : Error {
  using Error::Error;
};

// Quadrature tail bound or panel refinement failed to reach the target.
struct TailNotConverged : Error {
  using Error::Error;
};

// No applicable method for the requested operation.
struct Unsupported : Error {
  using Error::Error;
};

// Instance does not satisfy the class precondition of a property.
struct ClassMismatch : Error {
  using Error::Error;
};

// Sectorial generator could not land in the requested angle window.
struct SectorUnreachable : Error {
  using Error::Error;
};

}  // namespace nrt
