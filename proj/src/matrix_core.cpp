#include "nrt/matrix_core.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <string>

namespace nrt {

namespace detail {

void canonicalize_phases(ComplexMatrix& V) {
  for (Eigen::Index j = 0; j < V.cols(); ++j) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < V.rows(); ++i) {
      const double a = std::abs(V(i, j));
      if (a > best + 1e-15) {
        best = a;
        imax = i;
      }
    }
    if (best > 0.0) {
      V.col(j) *= std::conj(V(imax, j)) / best;
    }
  }
}

}  // namespace detail

namespace {

double max_abs(const MatrixRef& A) {
  return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff();
}

ComplexMatrix symmetrized(const MatrixRef& H) {
  ComplexMatrix S = 0.5 * (H + H.adjoint());
  return S;
}

void require_hermitian(const MatrixRef& H, const char* what) {
  if (!is_hermitian(H)) {
    throw NotHermitian(std::string(what) + ": ||H - H*|| exceeds hermiticity tolerance");
  }
}

}  // namespace

bool all_finite(const MatrixRef& A) {
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      if (!std::isfinite(A(i, j).real()) || !std::isfinite(A(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

void require_valid(const MatrixRef& A, const char* what) {
  if (A.rows() == 0 || A.rows() != A.cols()) {
    throw InvalidInput(std::string(what) + ": must be square and nonempty");
  }
  if (!all_finite(A)) {
    throw InvalidInput(std::string(what) + ": entries must be finite");
  }
}

bool is_hermitian(const MatrixRef& A, double rel_tol) {
  if (A.rows() != A.cols()) return false;
  const double gap = max_abs(A - A.adjoint().eval());
  return gap <= rel_tol * std::max(1.0, max_abs(A));
}

CartesianPair cartesian_parts(const MatrixRef& A) {
  CartesianPair p;
  p.H = symmetrized(0.5 * (A + A.adjoint()));
  const Complex minus_i(0.0, -1.0);
  p.K = symmetrized(minus_i * 0.5 * (A - A.adjoint()));
  return p;
}

RealVector hermitian_eigenvalues(const MatrixRef& H) {
  require_hermitian(H, "hermitian_eigenvalues");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(symmetrized(H), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

HermitianSpectrum hermitian_spectrum(const MatrixRef& H) {
  require_hermitian(H, "hermitian_spectrum");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(symmetrized(H));
  HermitianSpectrum s;
  s.eigenvalues = es.eigenvalues();
  s.eigenvectors = es.eigenvectors();
  detail::canonicalize_phases(s.eigenvectors);
  return s;
}

bool is_positive_definite(const MatrixRef& H, double tol) {
  const RealVector ev = hermitian_eigenvalues(H);
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return ev(0) > tol * std::max(1.0, norm);
}

ComplexMatrix inverse(const MatrixRef& A) {
  require_valid(A, "inverse");
  Eigen::FullPivLU<ComplexMatrix> lu(A);
  const double floor = kPivotTol * std::max(max_abs(A), std::numeric_limits<double>::min());
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (min_pivot <= floor) {
    throw Singular("inverse: pivot below 1e-14 * ||A||, matrix is singular");
  }
  return lu.inverse();
}

double spectral_norm(const MatrixRef& A) {
  if (A.size() == 0) return 0.0;
  if (A.rows() == A.cols() && is_hermitian(A)) {
    const RealVector ev = hermitian_eigenvalues(A);
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(A);
  return svd.singularValues()(0);
}

double condition_number(const MatrixRef& A) {
  Eigen::JacobiSVD<ComplexMatrix> svd(A);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

}  // namespace nrt
