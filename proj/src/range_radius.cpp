#include "nrt/range_radius.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <utility>

namespace nrt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t > kPi) t -= kTwoPi;
  if (t <= -kPi) t += kTwoPi;
  return t;
}

ComplexMatrix rotated_real(const MatrixRef& A, double theta) {
  const Complex phase(std::cos(theta), std::sin(theta));
  ComplexMatrix M = phase * A;
  return 0.5 * (M + M.adjoint()).eval();
}

struct EigPair {
  double lambda;
  ComplexVector vec;
};

double lambda_max_of(const ComplexMatrix& H) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(H.rows() - 1);
}

EigPair top_eigpair(const ComplexMatrix& H) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H);
  const Eigen::Index n = H.rows();
  ComplexMatrix top = es.eigenvectors().col(n - 1);
  detail::canonicalize_phases(top);
  return {es.eigenvalues()(n - 1), top.col(0)};
}

// Golden-section maximization returning the best point actually evaluated;
// tolerant of mild non-unimodality inside the bracket.
template <typename F>
std::pair<double, double> golden_max(F&& f, double a, double b, int iters, int* evals) {
  constexpr double invphi = 0.6180339887498949;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  double best_x = fc >= fd ? c : d;
  double best_f = std::max(fc, fd);
  for (int i = 0; i < iters; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    const double x = fc >= fd ? c : d;
    const double v = std::max(fc, fd);
    if (v > best_f) {
      best_f = v;
      best_x = x;
    }
  }
  if (evals != nullptr) *evals += iters + 2;
  return {best_x, best_f};
}

// Indices of cyclic local maxima of g, sorted by value descending.
std::vector<int> local_maxima(const std::vector<double>& g) {
  const int m = static_cast<int>(g.size());
  std::vector<int> idx;
  for (int j = 0; j < m; ++j) {
    const double prev = g[(j + m - 1) % m];
    const double next = g[(j + 1) % m];
    if (g[j] >= prev && g[j] >= next) idx.push_back(j);
  }
  if (idx.empty()) {
    idx.push_back(static_cast<int>(std::max_element(g.begin(), g.end()) - g.begin()));
  }
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return g[a] > g[b]; });
  return idx;
}

// Sweep + refine machinery shared by numerical_radius and accretive_rotation.
template <typename F>
std::pair<double, double> sweep_and_refine(F&& f, const RangeOptions& opts, int* evals) {
  const int m = std::max(4, opts.grid);
  std::vector<double> g(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    g[static_cast<std::size_t>(j)] = f(kTwoPi * j / m);
  }
  if (evals != nullptr) *evals += m;
  const std::vector<int> peaks = local_maxima(g);
  const double delta = kTwoPi / m;
  double best_theta = kTwoPi * peaks[0] / m;
  double best_val = g[static_cast<std::size_t>(peaks[0])];
  const int nb = std::min<int>(opts.brackets, static_cast<int>(peaks.size()));
  for (int b = 0; b < nb; ++b) {
    const double center = kTwoPi * peaks[static_cast<std::size_t>(b)] / m;
    auto [x, v] = golden_max(f, center - delta, center + delta, opts.golden_iters, evals);
    if (v > best_val) {
      best_val = v;
      best_theta = x;
    }
  }
  return {best_theta, best_val};
}

// --- small planar convex-geometry helpers (inner polygon of W(A)) ---

struct Vec2 {
  double x, y;
};

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew monotone chain; returns hull in CCW order, collinear points dropped.
// Degenerate inputs yield a single point or a two-point segment.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  const double qx = a.x + t * dx - p.x, qy = a.y + t * dy - p.y;
  return std::hypot(qx, qy);
}

// Signed distance of p from the boundary of a CCW polygon: positive inside.
double polygon_signed_margin(const std::vector<Vec2>& hull, const Vec2& p) {
  const std::size_t n = hull.size();
  bool inside = true;
  double min_edge_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = hull[i];
    const Vec2& b = hull[(i + 1) % n];
    if (cross(a, b, p) < 0.0) inside = false;
    min_edge_dist = std::min(min_edge_dist, dist_point_segment(p, a, b));
  }
  return inside ? min_edge_dist : -min_edge_dist;
}

// Does segment [a,b] meet the ray { (x, 0) : x <= 0 }?
bool segment_meets_negative_ray(const Vec2& a, const Vec2& b) {
  if (a.y == 0.0 && a.x <= 0.0) return true;
  if (b.y == 0.0 && b.x <= 0.0) return true;
  if ((a.y > 0.0 && b.y > 0.0) || (a.y < 0.0 && b.y < 0.0)) return false;
  if (a.y == b.y) {  // both on the axis, handled above unless both positive x
    return std::min(a.x, b.x) <= 0.0;
  }
  const double t = -a.y / (b.y - a.y);
  const double x0 = a.x + t * (b.x - a.x);
  return x0 <= 0.0;
}

}  // namespace

double rotated_real_lambda_max(const MatrixRef& A, double theta) {
  return lambda_max_of(rotated_real(A, theta));
}

double rotated_real_lambda_min(const MatrixRef& A, double theta) {
  const ComplexMatrix H = rotated_real(A, theta);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

std::vector<BoundaryPoint> range_boundary(const MatrixRef& A, int m) {
  require_valid(A, "range_boundary");
  if (m < 4) throw InvalidInput("range_boundary: need at least 4 directions");
  std::vector<BoundaryPoint> pts;
  pts.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const double theta = kTwoPi * j / m;
    const EigPair top = top_eigpair(rotated_real(A, -theta));
    const Complex z = (top.vec.adjoint() * (A * top.vec))(0, 0);
    pts.push_back({theta, z});
  }
  return pts;
}

RadiusReport numerical_radius(const MatrixRef& A, const RangeOptions& opts) {
  require_valid(A, "numerical_radius");
  RadiusReport rep;
  rep.grid_size = std::max(4, opts.grid);
  int evals = 0;

  auto f = [&](double theta) { return rotated_real_lambda_max(A, theta); };
  auto [theta, val] = sweep_and_refine(f, opts, &evals);

  // Alternating polish: the top eigenvector at theta proposes the angle
  // -Arg(<Ax,x>), which can only increase lambda_max. Converges to a fixed
  // point where gamma = -theta_star holds exactly.
  for (int it = 0; it < opts.polish_iters; ++it) {
    const EigPair top = top_eigpair(rotated_real(A, theta));
    const Complex z = (top.vec.adjoint() * (A * top.vec))(0, 0);
    ++evals;
    if (std::abs(z) == 0.0) break;
    const double proposal = -std::arg(z);
    if (std::abs(wrap_angle(proposal - theta)) < 1e-15) break;
    const double v = f(proposal);
    ++evals;
    if (v <= val) break;
    theta = proposal;
    val = v;
  }

  const EigPair top = top_eigpair(rotated_real(A, theta));
  const Complex z = (top.vec.adjoint() * (A * top.vec))(0, 0);
  rep.omega = top.lambda;
  rep.witness = top.vec;
  rep.gamma = std::abs(z) == 0.0 ? 0.0 : std::arg(z);
  // -gamma maximizes lambda_max to machine precision and keeps the
  // advertised identity theta_star = -gamma exact even when a clustered top
  // eigenvalue blurs the last digits of the sweep angle.
  rep.theta_star = std::abs(z) == 0.0 ? wrap_angle(theta) : wrap_angle(-rep.gamma);
  rep.refinement_iters = evals - rep.grid_size;
  if (rep.omega < 0.0) {
    // max_theta lambda_max is >= 0 for every matrix (trace argument); a
    // negative value can only be roundoff on the zero matrix.
    rep.omega = std::max(rep.omega, 0.0);
  }
  return rep;
}

double sector_angle(const MatrixRef& A, int m) {
  require_valid(A, "sector_angle");
  if (m < 4) throw InvalidInput("sector_angle: need at least 4 directions");
  const CartesianPair parts = cartesian_parts(A);
  if (!is_positive_definite(parts.H)) {
    throw NotAccretive("sector_angle: lambda_min(Re A) <= 0, matrix is not accretive");
  }

  auto arg_at = [&](double theta) {
    const EigPair top = top_eigpair(rotated_real(A, -theta));
    const Complex z = (top.vec.adjoint() * (A * top.vec))(0, 0);
    return std::arg(z);
  };

  std::vector<double> args;
  args.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    args.push_back(arg_at(kTwoPi * j / m));
  }
  const auto [mn_it, mx_it] = std::minmax_element(args.begin(), args.end());
  const double delta = kTwoPi / m;
  const double up_center = kTwoPi * (mx_it - args.begin()) / m;
  const double dn_center = kTwoPi * (mn_it - args.begin()) / m;

  auto [up_x, up] = golden_max(arg_at, up_center - delta, up_center + delta, 48, nullptr);
  auto [dn_x, dn] =
      golden_max([&](double t) { return -arg_at(t); }, dn_center - delta, dn_center + delta, 48,
                 nullptr);
  (void)up_x;
  (void)dn_x;
  double alpha = std::max({0.0, up, dn, *mx_it, -*mn_it});
  return std::min(alpha, std::nextafter(kPi / 2, 0.0));
}

SectorReport classify(const MatrixRef& A, int boundary_m) {
  require_valid(A, "classify");
  SectorReport rep;
  const CartesianPair parts = cartesian_parts(A);
  rep.min_re = hermitian_eigenvalues(parts.H)(0);
  rep.min_im = hermitian_eigenvalues(parts.K)(0);
  rep.accretive = is_positive_definite(parts.H);
  rep.dissipative = is_positive_definite(parts.K);
  rep.accretive_dissipative = rep.accretive && rep.dissipative;
  if (rep.accretive) {
    rep.alpha = sector_angle(A);
  }

  const std::vector<BoundaryPoint> pts = range_boundary(A, boundary_m);
  double scale = 1.0;
  double min_support = std::numeric_limits<double>::infinity();
  std::vector<Vec2> v2;
  v2.reserve(pts.size());
  for (const BoundaryPoint& p : pts) {
    scale = std::max(scale, std::abs(p.z));
    const Complex dir(std::cos(p.theta), -std::sin(p.theta));
    min_support = std::min(min_support, (dir * p.z).real());
    v2.push_back({p.z.real(), p.z.imag()});
  }

  const std::vector<Vec2> hull = convex_hull(v2);
  constexpr double kBoundaryTol = 1e-9;  // inner-hull certification band
  const Vec2 origin{0.0, 0.0};

  if (min_support < -1e-12 * scale) {
    // A sampled supporting half-plane separates 0 from W(A): certified out.
    rep.zero_in_range = false;
  } else if (hull.size() >= 3) {
    const double margin = polygon_signed_margin(hull, origin);
    if (margin > kBoundaryTol) {
      rep.zero_in_range = true;
    } else {
      rep.zero_inconclusive = true;
    }
  } else if (hull.size() == 2) {
    // Degenerate range (a segment); certify via its relative interior.
    const Vec2& a = hull[0];
    const Vec2& b = hull[1];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const double along = ((0.0 - a.x) * (b.x - a.x) + (0.0 - a.y) * (b.y - a.y)) / len;
    const double perp = std::abs((b.x - a.x) * (0.0 - a.y) - (b.y - a.y) * (0.0 - a.x)) / len;
    if (perp <= 1e-12 * scale && along > kBoundaryTol && along < len - kBoundaryTol) {
      rep.zero_in_range = true;
    } else if (dist_point_segment(origin, a, b) <= kBoundaryTol) {
      rep.zero_inconclusive = true;
    }
  } else if (!hull.empty()) {
    if (std::hypot(hull[0].x, hull[0].y) <= kBoundaryTol) rep.zero_inconclusive = true;
  }

  if (rep.zero_in_range) {
    rep.crosses_negative_axis = true;
  } else if (hull.size() == 1) {
    rep.crosses_negative_axis = hull[0].y == 0.0 && hull[0].x <= 0.0;
  } else {
    const std::size_t nedge = hull.size() == 2 ? 1 : hull.size();
    for (std::size_t i = 0; i < nedge && !rep.crosses_negative_axis; ++i) {
      rep.crosses_negative_axis =
          segment_meets_negative_ray(hull[i], hull[(i + 1) % hull.size()]);
    }
    if (!rep.crosses_negative_axis && hull.size() >= 3 &&
        polygon_signed_margin(hull, origin) > 0.0) {
      rep.crosses_negative_axis = true;  // 0 itself lies on the ray
    }
  }
  return rep;
}

double accretive_rotation(const MatrixRef& A, const RangeOptions& opts) {
  require_valid(A, "accretive_rotation");
  int evals = 0;
  auto f = [&](double theta) { return rotated_real_lambda_min(A, theta); };
  auto [theta, val] = sweep_and_refine(f, opts, &evals);
  if (val <= 0.0) {
    throw ZeroInRange(
        "accretive_rotation: 0 is in (or not separable from) W(A); "
        "no rotation makes the matrix accretive");
  }
  return wrap_angle(theta);
}

void write_boundary_csv(std::ostream& out, const std::vector<BoundaryPoint>& points) {
  out << "theta,re,im\n";
  char buf[128];
  for (const BoundaryPoint& p : points) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", p.theta, p.z.real(), p.z.imag());
    out << buf;
  }
}

}  // namespace nrt
