#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "nrt/matrix_core.hpp"

namespace nrt {

// One support point of the numerical range: z = <A x_theta, x_theta> where
// x_theta is the top eigenvector of Re(e^{-i theta} A).
struct BoundaryPoint {
  double theta;  // support direction in [0, 2pi)
  Complex z;
};

struct RadiusReport {
  double omega = 0.0;       // numerical radius
  double gamma = 0.0;       // Arg(<A x0, x0>) in (-pi, pi]
  double theta_star = 0.0;  // maximizer of lambda_max(Re(e^{i theta} A)), = -gamma
  ComplexVector witness;    // unit vector attaining omega
  int grid_size = 0;
  int refinement_iters = 0;
};

struct SectorReport {
  bool accretive = false;
  bool dissipative = false;
  bool accretive_dissipative = false;
  std::optional<double> alpha;  // sectorial half-angle, present iff accretive
  double min_re = 0.0;          // lambda_min(Re A)
  double min_im = 0.0;          // lambda_min(Im A)
  bool zero_in_range = false;
  bool zero_inconclusive = false;  // 0 within 1e-9 of the inner-hull boundary
  bool crosses_negative_axis = false;
};

struct RangeOptions {
  int grid = 2048;         // equispaced angles on [0, 2pi)
  int brackets = 3;        // local maxima refined by golden section
  int golden_iters = 60;
  int polish_iters = 40;   // eigenvector/angle alternation after refinement
};

// lambda_max(Re(e^{i theta} A)); the support function of W(A) evaluated in
// direction e^{-i theta}.
double rotated_real_lambda_max(const MatrixRef& A, double theta);

// lambda_min(Re(e^{i theta} A)).
double rotated_real_lambda_min(const MatrixRef& A, double theta);

std::vector<BoundaryPoint> range_boundary(const MatrixRef& A, int m);

RadiusReport numerical_radius(const MatrixRef& A, const RangeOptions& opts = {});

// Smallest half-angle alpha with W(A) contained in
// S_alpha = { z : |Im z| <= tan(alpha) Re z }. Requires A accretive.
double sector_angle(const MatrixRef& A, int m = 4096);

SectorReport classify(const MatrixRef& A, int boundary_m = 512);

// An angle theta with lambda_min(Re(e^{i theta} A)) > 0; exists iff 0 is
// outside W(A). Throws ZeroInRange otherwise.
double accretive_rotation(const MatrixRef& A, const RangeOptions& opts = {});

// CSV export: header "theta,re,im", one row per point, 17 significant digits.
void write_boundary_csv(std::ostream& out, const std::vector<BoundaryPoint>& points);

}  // namespace nrt
