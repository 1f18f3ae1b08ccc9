#include "nrt/frac_power.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "nrt/gauss_legendre.hpp"
#include "nrt/range_radius.hpp"

namespace nrt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuadTMin = 1e-3;  // exponents closer to {0,1} go spectral-only
constexpr double kDefectiveKappa = 1e8;

double branch_tol(double norm) {
  return 1e-12 * std::max(norm, std::numeric_limits<double>::min());
}

// Distance from z to the closed ray (-inf, 0].
double ray_distance(Complex z) {
  return z.real() > 0.0 ? std::abs(z) : std::abs(z.imag());
}

ComplexMatrix solve_lu(const ComplexMatrix& M, const MatrixRef& B) {
  Eigen::PartialPivLU<ComplexMatrix> lu(M);
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (min_pivot <= kPivotTol * M.cwiseAbs().maxCoeff()) {
    throw Singular("power_quadrature: resolvent solve hit a vanishing pivot");
  }
  return lu.solve(B);
}

// Integrand of the substituted resolvent integral, written in whichever of
// the two algebraically equal forms avoids overflow of e^{|u|}:
//   u <= 0:  e^{tu}      A (e^u I + A)^{-1}
//   u  > 0:  e^{(t-1)u}  A (I + e^{-u} A)^{-1}
ComplexMatrix integrand(const MatrixRef& A, double t, double u) {
  const Eigen::Index n = A.rows();
  if (u <= 0.0) {
    ComplexMatrix M = A;
    M.diagonal().array() += std::exp(u);
    return std::exp(t * u) * solve_lu(M, A);
  }
  ComplexMatrix M = std::exp(-u) * A;
  M.diagonal().array() += 1.0;
  (void)n;
  return std::exp((t - 1.0) * u) * solve_lu(M, A);
}

// Pairwise tree reduction; a fixed summation order that parallel panel
// evaluation schedules can reproduce bit-for-bit.
ComplexMatrix pairwise_sum(std::vector<ComplexMatrix> terms) {
  while (terms.size() > 1) {
    std::vector<ComplexMatrix> next;
    next.reserve((terms.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2) {
      next.push_back(terms[i] + terms[i + 1]);
    }
    if (terms.size() % 2 == 1) next.push_back(terms.back());
    terms = std::move(next);
  }
  return terms.front();
}

ComplexMatrix composite_panels(const MatrixRef& A, double t, double U, int panels,
                               const GaussLegendreRule& rule) {
  std::vector<ComplexMatrix> psums;
  psums.reserve(static_cast<std::size_t>(panels));
  const double width = 2.0 * U / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = -U + p * width;
    ComplexMatrix local = ComplexMatrix::Zero(A.rows(), A.cols());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double u = a + 0.5 * width * (rule.nodes[i] + 1.0);
      local += (0.5 * width * rule.weights[i]) * integrand(A, t, u);
    }
    psums.push_back(std::move(local));
  }
  return pairwise_sum(std::move(psums));
}

// Lower bound on dist(-s, W(A)) uniform over s >= 0, from the sampled
// supporting half-planes { Re(e^{-i theta_j} z) <= h_j } of W(A). Each
// sample gives the outer certificate dist(p, W) >= Re(e^{-i theta_j} p) - h_j.
double ray_separation_from_support(const std::vector<BoundaryPoint>& pts, double radius_cap) {
  auto separation_at = [&](double s) {
    double best = -std::numeric_limits<double>::infinity();
    for (const BoundaryPoint& p : pts) {
      const double h = (Complex(std::cos(p.theta), -std::sin(p.theta)) * p.z).real();
      best = std::max(best, -s * std::cos(p.theta) - h);
    }
    return best;
  };
  // separation_at is a max of affine functions of s, hence convex; its
  // minimum over [0, cap] is found by ternary search (beyond 2*radius the
  // theta = pi term grows linearly, so the cap is safe).
  double lo = 0.0, hi = std::max(1.0, 2.0 * radius_cap);
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (separation_at(m1) <= separation_at(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return std::min(separation_at(0.5 * (lo + hi)), separation_at(0.0));
}

}  // namespace

std::string to_string(PowerMethod m) {
  switch (m) {
    case PowerMethod::spectral:
      return "spectral";
    case PowerMethod::quadrature:
      return "quadrature";
    case PowerMethod::both:
      return "both";
  }
  return "?";
}

ComplexMatrix power_spectral(const MatrixRef& A, double t) {
  require_valid(A, "power_spectral");
  if (!(t > 0.0 && t <= 1.0)) {
    throw Unsupported("power_spectral: exponent must satisfy t in (0, 1]");
  }
  const double norm = spectral_norm(A);
  const double tol = branch_tol(norm);

  if (is_hermitian(A)) {
    const HermitianSpectrum s = hermitian_spectrum(A);
    RealVector powered(s.eigenvalues.size());
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
      const double lam = s.eigenvalues(i);
      if (lam <= tol) {
        throw BranchCut("power_spectral: eigenvalue on or near the branch cut (-inf, 0]");
      }
      powered(i) = std::pow(lam, t);
    }
    return s.eigenvectors * powered.asDiagonal() * s.eigenvectors.adjoint();
  }

  Eigen::ComplexEigenSolver<ComplexMatrix> es(A);
  if (es.info() != Eigen::Success) {
    throw Defective("power_spectral: eigendecomposition failed to converge");
  }
  const ComplexMatrix& V = es.eigenvectors();
  const double kappa = condition_number(V);
  if (!(kappa <= kDefectiveKappa)) {
    throw Defective("power_spectral: eigenvector condition number exceeds 1e8");
  }
  ComplexVector powered(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const Complex lam = es.eigenvalues()(i);
    if (ray_distance(lam) <= tol) {
      throw BranchCut("power_spectral: eigenvalue on or near the branch cut (-inf, 0]");
    }
    powered(i) = std::pow(lam, t);
  }
  Eigen::PartialPivLU<ComplexMatrix> lu(V);
  return (V * powered.asDiagonal()) * lu.inverse();
}

ComplexMatrix power_quadrature(const MatrixRef& A, double t, const QuadratureOptions& opts,
                               QuadratureInfo* info) {
  require_valid(A, "power_quadrature");
  if (!(t > 0.0 && t < 1.0)) {
    throw Unsupported("power_quadrature: exponent must satisfy t in (0, 1)");
  }
  if (t < kQuadTMin || t > 1.0 - kQuadTMin) {
    throw Unsupported("power_quadrature: t outside [1e-3, 1-1e-3] is served spectrally");
  }
  if (opts.nodes_per_panel < 2 || opts.panels < 1 || opts.window < 0.0 ||
      opts.target_tol < 1e-14) {
    throw InvalidInput("power_quadrature: invalid quadrature options");
  }

  const double norm = spectral_norm(A);
  if (norm <= 0.0) {
    throw BranchCut("power_quadrature: zero matrix lies on the branch cut");
  }

  // Certified separation of W(A) from the ray (-inf, 0], and the distance
  // of the resolvent poles from the integration line (for panel sizing).
  const CartesianPair parts = cartesian_parts(A);
  double d_ray;
  double pole_dist;
  if (is_positive_definite(parts.H)) {
    d_ray = hermitian_eigenvalues(parts.H)(0);
    pole_dist = kPi / 2.0;
  } else {
    const std::vector<BoundaryPoint> pts = range_boundary(A, 1024);
    d_ray = ray_separation_from_support(pts, norm);
    if (d_ray <= 1e-10 * std::max(1.0, norm)) {
      throw BranchCut("power_quadrature: W(A) is not separated from (-inf, 0]");
    }
    double max_arg = 0.0;
    for (const BoundaryPoint& p : pts) max_arg = std::max(max_arg, std::abs(std::arg(p.z)));
    pole_dist = std::max(kPi - max_arg, 0.05);
  }

  const double pref = std::sin(t * kPi) / kPi;
  const double scale = std::pow(norm, t);
  // Aim two orders below the contract so the delivered error sits well under
  // the reported estimate; the window only grows logarithmically from this.
  const double budget = 0.25 * 1e-2 * opts.target_tol * scale;

  double U = opts.window;
  if (U <= 0.0) {
    const double u_minus = std::log(pref * (1.0 / t + 1.0 / ((1.0 + t) * d_ray)) / budget) / t;
    const double u_plus = std::log(2.0 * norm * pref / ((1.0 - t) * budget)) / (1.0 - t);
    U = std::max({u_minus, u_plus, std::log(2.0 * norm + 1.0) + 1.0, 2.0});
  } else {
    const double tail_minus =
        pref * (std::exp(-t * U) / t + std::exp(-(1.0 + t) * U) / ((1.0 + t) * d_ray));
    const double tail_plus = std::exp(U) >= 2.0 * norm
                                 ? pref * 2.0 * norm * std::exp(-(1.0 - t) * U) / (1.0 - t)
                                 : std::numeric_limits<double>::infinity();
    if (tail_minus + tail_plus > 0.5 * opts.target_tol * scale) {
      throw TailNotConverged("power_quadrature: tail bound at +-U exceeds target_tol");
    }
  }

  const GaussLegendreRule rule = gauss_legendre(opts.nodes_per_panel);
  const double panel_width = std::min(3.0, pole_dist);
  int panels = std::max(opts.panels, static_cast<int>(std::ceil(2.0 * U / panel_width)));

  ComplexMatrix prev = composite_panels(A, t, U, panels, rule);
  constexpr int kMaxDoublings = 6;
  for (int round = 0; round < kMaxDoublings; ++round) {
    panels *= 2;
    ComplexMatrix fine = composite_panels(A, t, U, panels, rule);
    const double gap = pref * (fine - prev).norm();
    if (gap <= 2.0 * budget) {
      if (info != nullptr) {
        info->nodes = panels * opts.nodes_per_panel;
        info->window = U;
        info->est_error = gap + 2.0 * budget;
      }
      return pref * fine;
    }
    prev = std::move(fine);
  }
  throw TailNotConverged("power_quadrature: panel refinement did not reach target_tol");
}

PowerResult fractional_power(const MatrixRef& A, double t, const QuadratureOptions& opts) {
  require_valid(A, "fractional_power");
  if (!(t > 0.0 && t <= 1.0)) {
    throw Unsupported("fractional_power: exponent must satisfy t in (0, 1]");
  }
  PowerResult res;
  res.t = t;
  if (t == 1.0) {
    res.value = A;
    res.method = PowerMethod::spectral;
    return res;
  }

  std::optional<ComplexMatrix> spectral;
  try {
    spectral = power_spectral(A, t);
  } catch (const Defective&) {
  } catch (const BranchCut&) {
  }

  // Quadrature runs for accretive matrices (cross-check), and as the
  // fallback via the hull certificate when the spectral guard failed.
  std::optional<ComplexMatrix> quad;
  QuadratureInfo qinfo;
  if (t >= kQuadTMin && t <= 1.0 - kQuadTMin) {
    const CartesianPair parts = cartesian_parts(A);
    const bool accretive = is_positive_definite(parts.H);
    if (accretive || !spectral.has_value()) {
      try {
        quad = power_quadrature(A, t, opts, &qinfo);
      } catch (const Error&) {
      }
    }
  }

  if (spectral && quad) {
    res.value = *spectral;
    res.method = PowerMethod::both;
    res.discrepancy = spectral_norm(*spectral - *quad);
    res.quad_nodes = qinfo.nodes;
    res.truncation = qinfo.window;
  } else if (spectral) {
    res.value = *spectral;
    res.method = PowerMethod::spectral;
  } else if (quad) {
    res.value = *quad;
    res.method = PowerMethod::quadrature;
    res.quad_nodes = qinfo.nodes;
    res.truncation = qinfo.window;
  } else {
    throw Unsupported(
        "fractional_power: matrix is defective or touches the branch cut and no "
        "quadrature certificate applies");
  }
  return res;
}

ComplexMatrix matrix_power_int(const MatrixRef& A, long k) {
  require_valid(A, "matrix_power_int");
  if (k < 1) throw InvalidInput("matrix_power_int: k must be >= 1");
  ComplexMatrix base = A;
  ComplexMatrix result = ComplexMatrix::Identity(A.rows(), A.cols());
  long e = k;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

ComplexMatrix hermitian_power(const MatrixRef& H, double t) {
  require_valid(H, "hermitian_power");
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Unsupported("hermitian_power: exponent must satisfy t in [0, 1]");
  }
  const HermitianSpectrum s = hermitian_spectrum(H);
  const double norm =
      std::max(std::abs(s.eigenvalues(0)), std::abs(s.eigenvalues(s.eigenvalues.size() - 1)));
  RealVector powered(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    double lam = s.eigenvalues(i);
    if (lam < -1e-12 * std::max(1.0, norm)) {
      throw BranchCut("hermitian_power: negative eigenvalue");
    }
    lam = std::max(lam, 0.0);
    powered(i) = std::pow(lam, t);
  }
  return s.eigenvectors * powered.asDiagonal() * s.eigenvectors.adjoint();
}

}  // namespace nrt
