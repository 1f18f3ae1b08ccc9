#pragma once

#include <string>

#include "nrt/matrix_core.hpp"

namespace nrt {

enum class PowerMethod { spectral, quadrature, both };

std::string to_string(PowerMethod m);

struct QuadratureOptions {
  int nodes_per_panel = 40;
  int panels = 8;          // starting panel count, doubled until agreement
  double window = 0.0;     // half-width U of the integration window; 0 = auto
  double target_tol = 1e-10;
};

struct PowerResult {
  ComplexMatrix value;   // A^t
  double t = 0.0;
  PowerMethod method = PowerMethod::spectral;
  double discrepancy = 0.0;  // spectral-norm gap between methods when both ran
  int quad_nodes = 0;
  double truncation = 0.0;   // window half-width U actually used
};

// Principal power through the eigendecomposition A = V diag(lambda) V^{-1}.
// Throws Defective when cond(V) > 1e8, BranchCut when an eigenvalue is
// within 1e-12 * ||A|| of (-inf, 0].
ComplexMatrix power_spectral(const MatrixRef& A, double t);

struct QuadratureInfo {
  int nodes = 0;
  double window = 0.0;
  double est_error = 0.0;  // discretization gap + tail budget
};

// Principal power through the real-line resolvent integral
//   A^t = sin(t pi)/pi * Int_0^inf s^{t-1} A (sI + A)^{-1} ds,
// substituted s = e^u and truncated to [-U, U] with certified tails.
// Requires t in [1e-3, 1-1e-3] and W(A) separated from (-inf, 0].
ComplexMatrix power_quadrature(const MatrixRef& A, double t,
                               const QuadratureOptions& opts = {},
                               QuadratureInfo* info = nullptr);

// Dispatch: spectral when the diagonalizability guard passes, quadrature
// when the numerical range admits it; cross-checks and records the gap
// when both ran. Throws Unsupported when neither route applies.
PowerResult fractional_power(const MatrixRef& A, double t,
                             const QuadratureOptions& opts = {});

// A^k by repeated squaring, k >= 1.
ComplexMatrix matrix_power_int(const MatrixRef& A, long k);

// Spectral calculus t-th power of a Hermitian positive semidefinite matrix.
ComplexMatrix hermitian_power(const MatrixRef& H, double t);

}  // namespace nrt
