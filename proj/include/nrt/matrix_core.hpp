#pragma once

#include <Eigen/Dense>
#include <complex>

#include "nrt/errors.hpp"

namespace nrt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Expression-friendly argument type: binds to any dense complex block.
using MatrixRef = Eigen::Ref<const ComplexMatrix>;

// Relative tolerance under which a matrix is accepted as Hermitian and
// then symmetrized exactly (max-abs-entry norm).
inline constexpr double kHermitianTol = 1e-12;

// Default relative floor for strict positive definiteness.
inline constexpr double kPdTol = 1e-10;

// Relative pivot threshold below which elimination reports Singular.
inline constexpr double kPivotTol = 1e-14;

// Hermitian parts of the Toeplitz decomposition A = H + iK.
struct CartesianPair {
  ComplexMatrix H;
  ComplexMatrix K;
};

// Full spectral decomposition of a Hermitian matrix, eigenvalues ascending,
// eigenvector phases canonicalized so results are reproducible.
struct HermitianSpectrum {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;  // columns, unitary
};

bool all_finite(const MatrixRef& A);

// Throws InvalidInput unless A is square, nonempty and finite.
void require_valid(const MatrixRef& A, const char* what = "matrix");

// Max-abs-entry distance from Hermitian symmetry, relative gate used by
// every "claimed Hermitian" entry point.
bool is_hermitian(const MatrixRef& A, double rel_tol = kHermitianTol);

CartesianPair cartesian_parts(const MatrixRef& A);

// Eigenvalues only (ascending); cheaper than the full decomposition.
RealVector hermitian_eigenvalues(const MatrixRef& H);

HermitianSpectrum hermitian_spectrum(const MatrixRef& H);

bool is_positive_definite(const MatrixRef& H, double tol = kPdTol);

ComplexMatrix inverse(const MatrixRef& A);

// Largest singular value; for (near-)Hermitian input uses max |eigenvalue|.
double spectral_norm(const MatrixRef& A);

// Spectral condition number sigma_max / sigma_min (infinity if singular).
double condition_number(const MatrixRef& A);

namespace detail {
// Rotates each column so its largest-modulus entry is real positive
// (ties break at the lowest row index); fixes eigenvector phases so
// witness vectors are reproducible.
void canonicalize_phases(ComplexMatrix& V);
}  // namespace detail

}  // namespace nrt
