#include "nrt/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <thread>

#include "nrt/matrix_io.hpp"

namespace nrt {

namespace {

constexpr double kPi = std::numbers::pi;

// --- deterministic randomness ---------------------------------------------
// mt19937_64 output is pinned by the standard; distributions are not, so
// uniforms and gaussians are derived from the raw bits explicitly.

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ComplexMatrix gaussian_matrix(int n, Rng& rng) {
  ComplexMatrix G(n, n);
  const double s = 1.0 / std::sqrt(2.0 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      G(i, j) = Complex(rng.gaussian(), rng.gaussian()) * s;
    }
  }
  return G;
}

ComplexMatrix hermitian_gaussian(int n, Rng& rng) {
  const ComplexMatrix B = gaussian_matrix(n, rng);
  return 0.5 * (B + B.adjoint()).eval();
}

ComplexMatrix hpd_gaussian(int n, Rng& rng, double eig_floor) {
  const ComplexMatrix G = gaussian_matrix(n, rng);
  ComplexMatrix H = G.adjoint() * G;
  H.diagonal().array() += eig_floor;
  return 0.5 * (H + H.adjoint()).eval();
}

ComplexMatrix accretive_gaussian(int n, Rng& rng, double eig_floor) {
  const ComplexMatrix H = hpd_gaussian(n, rng, eig_floor);
  const ComplexMatrix K = hermitian_gaussian(n, rng);
  return H + Complex(0.0, 1.0) * K;
}

// Eigenvalue clamp lambda >= eig_floor; the projection step of the hunter.
ComplexMatrix project_spd(const MatrixRef& H, double eig_floor) {
  const HermitianSpectrum s = hermitian_spectrum(H);
  const RealVector clamped = s.eigenvalues.cwiseMax(eig_floor);
  ComplexMatrix M = s.eigenvectors * clamped.asDiagonal() * s.eigenvectors.adjoint();
  return 0.5 * (M + M.adjoint()).eval();
}

double lambda_min(const MatrixRef& H) { return hermitian_eigenvalues(H)(0); }

double lambda_max(const MatrixRef& H) {
  const RealVector ev = hermitian_eigenvalues(H);
  return ev(ev.size() - 1);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  unsigned n_threads = threads == 0 ? std::thread::hardware_concurrency() : threads;
  n_threads = std::max(1u, std::min(n_threads, 64u));
  if (n_threads == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned w = 0; w < n_threads; ++w) {
    pool.emplace_back([&body, w, n_threads, count]() {
      for (std::size_t i = w; i < count; i += n_threads) body(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace

// --- kind / pid names -------------------------------------------------------

std::string to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::hpd:
      return "hpd";
    case GeneratorKind::accretive:
      return "accretive";
    case GeneratorKind::dissipative:
      return "dissipative";
    case GeneratorKind::accretive_dissipative:
      return "ad";
    case GeneratorKind::sectorial:
      return "sectorial";
    case GeneratorKind::generic:
      return "generic";
  }
  return "?";
}

std::optional<GeneratorKind> generator_kind_from_string(const std::string& s) {
  if (s == "hpd") return GeneratorKind::hpd;
  if (s == "accretive") return GeneratorKind::accretive;
  if (s == "dissipative") return GeneratorKind::dissipative;
  if (s == "ad" || s == "accretive_dissipative") return GeneratorKind::accretive_dissipative;
  if (s == "sectorial") return GeneratorKind::sectorial;
  if (s == "generic") return GeneratorKind::generic;
  return std::nullopt;
}

std::string to_string(PropertyId pid) {
  return "P" + std::to_string(static_cast<int>(pid) + 1);
}

std::optional<PropertyId> property_from_string(const std::string& s) {
  if (s.size() < 2 || (s[0] != 'P' && s[0] != 'p')) return std::nullopt;
  int v = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    v = v * 10 + (s[i] - '0');
  }
  if (v < 1 || v > 14) return std::nullopt;
  return static_cast<PropertyId>(v - 1);
}

std::vector<PropertyId> all_properties() {
  std::vector<PropertyId> out;
  out.reserve(14);
  for (int i = 0; i < 14; ++i) out.push_back(static_cast<PropertyId>(i));
  return out;
}

// --- generator ----------------------------------------------------------------

ComplexMatrix generate(const GeneratorSpec& spec) {
  if (spec.n < 1) throw InvalidInput("generate: dimension must be >= 1");
  if (spec.eig_floor <= 0.0) throw InvalidInput("generate: eig_floor must be positive");
  Rng rng(spec.seed);
  const int n = spec.n;
  ComplexMatrix A;
  switch (spec.kind) {
    case GeneratorKind::hpd:
      A = hpd_gaussian(n, rng, spec.eig_floor);
      break;
    case GeneratorKind::accretive:
      A = accretive_gaussian(n, rng, spec.eig_floor);
      break;
    case GeneratorKind::dissipative:
      A = Complex(0.0, 1.0) * accretive_gaussian(n, rng, spec.eig_floor);
      break;
    case GeneratorKind::accretive_dissipative: {
      const ComplexMatrix H = hpd_gaussian(n, rng, spec.eig_floor);
      const ComplexMatrix K = hpd_gaussian(n, rng, spec.eig_floor);
      A = H + Complex(0.0, 1.0) * K;
      break;
    }
    case GeneratorKind::generic:
      A = gaussian_matrix(n, rng);
      break;
    case GeneratorKind::sectorial: {
      if (!(spec.alpha > 0.0 && spec.alpha < kPi / 2.0)) {
        throw InvalidInput("generate: sectorial target alpha must lie in (0, pi/2)");
      }
      const ComplexMatrix H = hpd_gaussian(n, rng, spec.eig_floor);
      const ComplexMatrix K = hermitian_gaussian(n, rng);
      auto instance = [&](double c) { return (H + Complex(0.0, c) * K).eval(); };
      auto angle_at = [&](double c) { return sector_angle(instance(c)); };
      // alpha(c) grows monotonically with c (each range point's |arg| does),
      // so bracket the target by doubling, then bisect into (0.9 alpha, alpha].
      double hi = 1.0;
      int doublings = 0;
      while (angle_at(hi) <= spec.alpha && doublings < 60) {
        hi *= 2.0;
        ++doublings;
      }
      if (doublings == 60) {
        // K too weak to reach the window; the widest achievable instance
        // still satisfies the <= alpha contract.
        return instance(hi);
      }
      double lo = 0.0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double a = angle_at(mid);
        if (a > spec.alpha) {
          hi = mid;
        } else if (a <= 0.9 * spec.alpha) {
          lo = mid;
        } else {
          return instance(mid);
        }
      }
      throw SectorUnreachable("generate: bisection could not land in (0.9*alpha, alpha]");
    }
  }
  if (!all_finite(A)) throw InvalidInput("generate: produced non-finite entries");
  return A;
}

// --- digest ---------------------------------------------------------------------

std::string matrix_digest(const MatrixRef& A) {
  std::uint64_t h = 1469598103934665603ULL;
  auto absorb = [&h](std::uint64_t bits) {
    for (int b = 0; b < 8; ++b) {
      h = (h ^ ((bits >> (8 * b)) & 0xffu)) * 1099511628211ULL;
    }
  };
  auto absorb_double = [&](double x) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof(bits));
    absorb(bits);
  };
  absorb(static_cast<std::uint64_t>(A.rows()));
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      absorb_double(A(i, j).real());
      absorb_double(A(i, j).imag());
    }
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// --- brute-force omega oracle ------------------------------------------------------

namespace {

ComplexVector random_unit(Eigen::Index n, Rng& rng) {
  ComplexVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = Complex(rng.gaussian(), rng.gaussian());
  const double nrm = x.norm();
  if (nrm == 0.0) return ComplexVector::Unit(n, 0);
  return x / nrm;
}

double ascend_quadratic_form(const MatrixRef& A, ComplexVector x) {
  const ComplexMatrix AH = A.adjoint();
  auto value = [&A](const ComplexVector& v) {
    return std::abs((v.adjoint() * (A * v))(0, 0));
  };
  double val = value(x);
  double step = 0.5;
  for (int it = 0; it < 300 && step > 1e-13; ++it) {
    const ComplexVector Ax = A * x;
    const Complex q = (x.adjoint() * Ax)(0, 0);
    const ComplexVector grad = std::conj(q) * Ax + q * (AH * x);
    const double gn = grad.norm();
    if (gn < 1e-18) break;
    ComplexVector y = x + (step / gn) * grad;
    y /= y.norm();
    const double vy = value(y);
    if (vy > val) {
      x = std::move(y);
      val = vy;
      step *= 1.3;
    } else {
      step *= 0.5;
    }
  }
  return val;
}

}  // namespace

double omega_brute_force(const MatrixRef& A, int probes, int restarts, std::uint64_t seed) {
  require_valid(A, "omega_brute_force");
  Rng rng(seed);
  const Eigen::Index n = A.rows();
  double best = 0.0;
  ComplexVector best_x = ComplexVector::Unit(n, 0);
  for (int p = 0; p < probes; ++p) {
    const ComplexVector x = random_unit(n, rng);
    const double v = std::abs((x.adjoint() * (A * x))(0, 0));
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  best = std::max(best, ascend_quadratic_form(A, best_x));
  for (int r = 1; r < restarts; ++r) {
    best = std::max(best, ascend_quadratic_form(A, random_unit(n, rng)));
  }
  return best;
}

// --- property evaluation --------------------------------------------------------------

namespace {

// Lazily fills the per-instance cache; every accessor is a pure function of A.
struct CacheView {
  const MatrixRef& A;
  InstanceCache& c;

  const RadiusReport& radius() {
    if (!c.radius) c.radius = numerical_radius(A);
    return *c.radius;
  }
  double omega() { return radius().omega; }
  const CartesianPair& parts() {
    if (!c.parts) c.parts = cartesian_parts(A);
    return *c.parts;
  }
  double norm() {
    if (!c.norm) c.norm = spectral_norm(A);
    return *c.norm;
  }
  double alpha() {
    if (!c.alpha) c.alpha = sector_angle(A);
    return *c.alpha;
  }
  const ComplexMatrix& frac(double t) {
    auto it = c.frac_pow.find(t);
    if (it == c.frac_pow.end()) {
      PowerResult r = fractional_power(A, t);
      c.frac_disc[t] = r.method == PowerMethod::both ? r.discrepancy : -1.0;
      it = c.frac_pow.emplace(t, std::move(r.value)).first;
    }
    return it->second;
  }
  double frac_disc(double t) {
    const auto it = c.frac_disc.find(t);
    return it == c.frac_disc.end() ? -1.0 : it->second;
  }
  double omega_frac(double t) {
    auto it = c.omega_frac.find(t);
    if (it == c.omega_frac.end()) {
      it = c.omega_frac.emplace(t, numerical_radius(frac(t)).omega).first;
    }
    return it->second;
  }
  double alpha_frac(double t) {
    auto it = c.alpha_frac.find(t);
    if (it == c.alpha_frac.end()) {
      it = c.alpha_frac.emplace(t, sector_angle(frac(t))).first;
    }
    return it->second;
  }
  const ComplexMatrix& ipow(long k) {
    auto it = c.int_pow.find(k);
    if (it == c.int_pow.end()) it = c.int_pow.emplace(k, matrix_power_int(A, k)).first;
    return it->second;
  }
  double omega_ipow(long k) {
    auto it = c.omega_int.find(k);
    if (it == c.omega_int.end()) {
      it = c.omega_int.emplace(k, numerical_radius(ipow(k)).omega).first;
    }
    return it->second;
  }

  bool accretive() { return is_positive_definite(parts().H); }
  bool dissipative() { return is_positive_definite(parts().K); }

  void require_accretive(const char* pid) {
    if (!accretive()) {
      throw ClassMismatch(std::string(pid) +
                          ": requires accretive A (lambda_min(Re A) > 0)");
    }
  }
  void require_ad(const char* pid) {
    if (!accretive() || !dissipative()) {
      throw ClassMismatch(std::string(pid) + ": requires accretive-dissipative A");
    }
  }
  void require_hpd(const char* pid) {
    if (!is_hermitian(A) || !is_positive_definite(parts().H)) {
      throw ClassMismatch(std::string(pid) + ": requires Hermitian positive definite A");
    }
  }
};

double require_t(const PropertyParams& p, const char* pid, double lo, double hi) {
  if (!p.t || !(*p.t > lo && *p.t < hi)) {
    throw InvalidInput(std::string(pid) + ": exponent t required in (" + format_double(lo) +
                       ", " + format_double(hi) + ")");
  }
  return *p.t;
}

long require_k(const PropertyParams& p, const char* pid, long lo) {
  if (!p.k || *p.k < lo) {
    throw InvalidInput(std::string(pid) + ": integer k >= " + std::to_string(lo) +
                       " required");
  }
  return *p.k;
}

}  // namespace

PropertyMargin evaluate_property(PropertyId pid, const MatrixRef& A,
                                 const PropertyParams& params, InstanceCache* cache) {
  require_valid(A, "evaluate_property");
  InstanceCache local;
  CacheView cv{A, cache != nullptr ? *cache : local};

  PropertyMargin out;
  out.pid = pid;
  out.params = params;
  out.instance_digest = matrix_digest(A);

  char detail[256] = {0};
  switch (pid) {
    case PropertyId::P1: {
      const long k = require_k(params, "P1", 1);
      const double wk = std::pow(cv.omega(), static_cast<double>(k));
      const double wpk = cv.omega_ipow(k);
      out.margin = wk - wpk;
      std::snprintf(detail, sizeof(detail), "omega^k=%.17g omega(A^k)=%.17g", wk, wpk);
      break;
    }
    case PropertyId::P2: {
      cv.require_accretive("P2");
      const long k = require_k(params, "P2", 1);
      const double t = 1.0 / static_cast<double>(k);
      const double lhs = cv.omega_frac(t);
      const double rhs = std::pow(cv.omega(), t);
      out.margin = lhs - rhs;
      std::snprintf(detail, sizeof(detail), "omega(A^{1/k})=%.17g omega^{1/k}=%.17g", lhs,
                    rhs);
      break;
    }
    case PropertyId::P3:
    case PropertyId::P4:
    case PropertyId::P14: {
      const char* name =
          pid == PropertyId::P3 ? "P3" : (pid == PropertyId::P4 ? "P4" : "P14");
      if (pid == PropertyId::P3) {
        cv.require_ad(name);
      } else {
        cv.require_accretive(name);
      }
      const double hi = pid == PropertyId::P4 ? 0.5 : 1.0;
      const double t = require_t(params, name, 0.0, hi);
      const double lhs = cv.omega_frac(t);
      const double rhs = std::pow(cv.omega(), t);
      out.margin = lhs - rhs;
      std::snprintf(detail, sizeof(detail), "omega(A^t)=%.17g omega^t=%.17g disc=%.3g", lhs,
                    rhs, cv.frac_disc(t));
      break;
    }
    case PropertyId::P5: {
      cv.require_accretive("P5");
      const double t = require_t(params, "P5", 0.0, 1.0);
      const ComplexMatrix re_pow = cartesian_parts(cv.frac(t)).H;
      const ComplexMatrix pow_re = hermitian_power(cv.parts().H, t);
      out.margin = lambda_min(re_pow - pow_re);
      std::snprintf(detail, sizeof(detail), "lambda_min(Re(A^t) - Re^t(A))=%.17g",
                    out.margin);
      break;
    }
    case PropertyId::P6: {
      cv.require_accretive("P6");
      const double t = require_t(params, "P6", 0.0, 1.0);
      const double a1 = cv.alpha();
      const double a2 = cv.alpha_frac(t);
      out.margin = t * a1 - a2;
      std::snprintf(detail, sizeof(detail), "alpha(A)=%.17g alpha(A^t)=%.17g", a1, a2);
      break;
    }
    case PropertyId::P7: {
      cv.require_ad("P7");
      const double t = require_t(params, "P7", 0.0, 1.0);
      const CartesianPair pt = cartesian_parts(cv.frac(t));
      const double mre = lambda_min(pt.H);
      const double mim = lambda_min(pt.K);
      out.margin = std::min(mre, mim);
      std::snprintf(detail, sizeof(detail), "min_re(A^t)=%.17g min_im(A^t)=%.17g", mre, mim);
      break;
    }
    case PropertyId::P8: {
      cv.require_ad("P8");
      const CartesianPair& p = cv.parts();
      const ComplexMatrix Ainv = inverse(A);
      const CartesianPair pinv = cartesian_parts(Ainv);
      const ComplexMatrix Hinv = inverse(p.H);
      const ComplexMatrix Kinv = inverse(p.K);
      const ComplexMatrix E_arg = p.H + p.K * Hinv * p.K;
      const ComplexMatrix F_arg = p.K + p.H * Kinv * p.H;
      const ComplexMatrix E = inverse(0.5 * (E_arg + E_arg.adjoint()).eval());
      const ComplexMatrix F = -inverse(0.5 * (F_arg + F_arg.adjoint()).eval());
      const double gap_e = spectral_norm(pinv.H - E);
      const double gap_f = spectral_norm(pinv.K - F);
      const double tol_match = 1e-8 * condition_number(A);
      const double e_pd = lambda_min(pinv.H);
      const double f_nd = -lambda_max(pinv.K);
      out.margin = std::min({tol_match - gap_e, tol_match - gap_f, e_pd, f_nd});
      std::snprintf(detail, sizeof(detail),
                    "gapE=%.3g gapF=%.3g lmin(ReAinv)=%.17g lmax(ImAinv)=%.17g", gap_e, gap_f,
                    e_pd, -f_nd);
      break;
    }
    case PropertyId::P9: {
      cv.require_hpd("P9");
      const double t = require_t(params, "P9", 0.0, 1.0);
      const double q1 = cv.omega_frac(t);
      const double q2 = spectral_norm(cv.frac(t));
      const double q3 = std::pow(cv.norm(), t);
      const double q4 = std::pow(cv.omega(), t);
      out.margin = -std::max({std::abs(q1 - q2), std::abs(q2 - q3), std::abs(q3 - q4)});
      std::snprintf(detail, sizeof(detail), "w(A^t)=%.17g |A^t|=%.17g |A|^t=%.17g w^t=%.17g",
                    q1, q2, q3, q4);
      break;
    }
    case PropertyId::P10: {
      const RadiusReport& r = cv.radius();
      const Complex ph(std::cos(-r.gamma), std::sin(-r.gamma));
      const ComplexMatrix M = ph * A;
      const double nrm = spectral_norm(0.5 * (M + M.adjoint()).eval());
      out.margin = -std::abs(r.omega - nrm);
      std::snprintf(detail, sizeof(detail), "omega=%.17g |Re(e^{-ig}A)|=%.17g gamma=%.17g",
                    r.omega, nrm, r.gamma);
      break;
    }
    case PropertyId::P11: {
      cv.require_accretive("P11");
      const double t = require_t(params, "P11", 0.0, 1.0);
      if (!params.theta || !(std::abs(*params.theta) < kPi / 2.0)) {
        throw InvalidInput("P11: rotation theta required in (-pi/2, pi/2)");
      }
      const double th = *params.theta;
      const Complex ph(std::cos(th), std::sin(th));
      const ComplexMatrix lhs = fractional_power(ph * A, t).value;
      const Complex pht(std::cos(t * th), std::sin(t * th));
      const ComplexMatrix rhs = pht * cv.frac(t);
      out.margin = -spectral_norm(lhs - rhs);
      std::snprintf(detail, sizeof(detail), "gap=%.3g theta=%.17g", -out.margin, th);
      break;
    }
    case PropertyId::P12: {
      const double w = cv.omega();
      double worst = -std::numeric_limits<double>::infinity();
      constexpr int kProbes = 512;
      for (int j = 0; j < kProbes; ++j) {
        const double th = 2.0 * kPi * (j + 0.5) / kProbes;  // offset from the sweep grid
        const Complex ph(std::cos(th), std::sin(th));
        const ComplexMatrix M = ph * A;
        worst = std::max(worst, spectral_norm(0.5 * (M + M.adjoint()).eval()) - w);
      }
      out.margin = -worst;
      std::snprintf(detail, sizeof(detail), "omega=%.17g max_probe_excess=%.3g", w, worst);
      break;
    }
    case PropertyId::P13: {
      cv.require_accretive("P13");
      const long k = require_k(params, "P13", 2);
      if (!params.m || !(*params.m >= 2.0 && *params.m <= static_cast<double>(k))) {
        throw InvalidInput("P13: power m required in [2, k]");
      }
      const double m = *params.m;
      const ComplexMatrix& Ak = cv.ipow(k);
      if (!is_positive_definite(cartesian_parts(Ak).H)) {
        throw ClassMismatch("P13: requires A^k accretive (lambda_min(Re A^k) > 0)");
      }
      const bool integral = std::abs(m - std::round(m)) < 1e-12;
      double wm = 0.0;
      double route_disc = -1.0;
      if (integral) {
        const long mi = static_cast<long>(std::llround(m));
        wm = cv.omega_ipow(mi);
        // The fractional route (A^k)^{m/k} is recorded alongside as a
        // cross-check whenever it applies.
        try {
          const ComplexMatrix Am2 = fractional_power(Ak, m / static_cast<double>(k)).value;
          route_disc = spectral_norm(cv.ipow(mi) - Am2);
        } catch (const Error&) {
        }
      } else {
        const ComplexMatrix Am = fractional_power(Ak, m / static_cast<double>(k)).value;
        wm = numerical_radius(Am).omega;
      }
      const double rhs = std::pow(cv.omega(), m);
      out.margin = rhs - wm;
      std::snprintf(detail, sizeof(detail), "omega^m=%.17g omega(A^m)=%.17g route_disc=%.3g",
                    rhs, wm, route_disc);
      break;
    }
  }

  out.scale = std::max(1.0, cv.omega());
  out.detail = detail;
  return out;
}

// --- suite ------------------------------------------------------------------------------

namespace {

struct Evaluation {
  PropertyId pid = PropertyId::P1;
  bool ok = false;
  PropertyMargin margin;
  std::string error;
};

std::vector<PropertyParams> parameter_grid(PropertyId pid, const SuiteConfig& cfg,
                                           double theta_item) {
  std::vector<PropertyParams> grid;
  auto with_t = [&](double lo, double hi) {
    for (double t : cfg.t_grid) {
      if (t > lo && t < hi) {
        PropertyParams p;
        p.t = t;
        grid.push_back(p);
      }
    }
  };
  switch (pid) {
    case PropertyId::P1:
    case PropertyId::P2:
      for (long k : cfg.k_set) {
        if (k >= 1) {
          PropertyParams p;
          p.k = k;
          grid.push_back(p);
        }
      }
      break;
    case PropertyId::P3:
    case PropertyId::P5:
    case PropertyId::P6:
    case PropertyId::P7:
    case PropertyId::P9:
    case PropertyId::P14:
      with_t(0.0, 1.0);
      break;
    case PropertyId::P4:
      with_t(0.0, 0.5);
      break;
    case PropertyId::P8:
    case PropertyId::P10:
    case PropertyId::P12:
      grid.push_back(PropertyParams{});
      break;
    case PropertyId::P11:
      for (double t : cfg.t_grid) {
        if (t > 0.0 && t < 1.0) {
          PropertyParams p;
          p.t = t;
          p.theta = theta_item;
          grid.push_back(p);
        }
      }
      break;
    case PropertyId::P13:
      for (long k : cfg.k_set) {
        if (k < 2) continue;
        for (long m = 2; m <= k; ++m) {
          PropertyParams p;
          p.k = k;
          p.m = static_cast<double>(m);
          grid.push_back(p);
        }
      }
      break;
  }
  return grid;
}

}  // namespace

VerificationReport run_suite(const SuiteConfig& config) {
  if (config.samples < 0 || config.n_min < 1 || config.n_max < config.n_min) {
    throw InvalidInput("run_suite: invalid sample/dimension configuration");
  }
  const auto t0 = std::chrono::steady_clock::now();

  VerificationReport report;
  report.config = config;
  for (PropertyId pid : config.pids) report.stats[pid];

  const std::size_t count = static_cast<std::size_t>(config.samples);
  std::vector<std::vector<Evaluation>> results(count);
  const int span = config.n_max - config.n_min + 1;

  parallel_for(count, config.threads, [&](std::size_t i) {
    std::vector<Evaluation>& evals = results[i];
    const std::uint64_t item_seed = mix_seed(config.seed, i);
    GeneratorSpec gs;
    gs.kind = config.kind;
    gs.n = config.n_min + static_cast<int>(i % static_cast<std::size_t>(span));
    gs.seed = item_seed;
    gs.alpha = config.alpha;
    gs.eig_floor = config.eig_floor;

    ComplexMatrix A;
    try {
      A = generate(gs);
    } catch (const std::exception& e) {
      for (PropertyId pid : config.pids) {
        Evaluation ev;
        ev.pid = pid;
        ev.error = std::string("generate: ") + e.what();
        evals.push_back(std::move(ev));
      }
      return;
    }

    Rng prng(mix_seed(item_seed, 0x11e7a));
    const double theta_item = prng.uniform(-0.95 * kPi / 2.0, 0.95 * kPi / 2.0);

    InstanceCache cache;
    for (PropertyId pid : config.pids) {
      for (const PropertyParams& params : parameter_grid(pid, config, theta_item)) {
        Evaluation ev;
        ev.pid = pid;
        try {
          ev.margin = evaluate_property(pid, A, params, &cache);
          ev.ok = true;
        } catch (const std::exception& e) {
          ev.error = e.what();
        }
        evals.push_back(std::move(ev));
      }
    }
  });

  for (const std::vector<Evaluation>& evals : results) {
    for (const Evaluation& ev : evals) {
      PidStats& st = report.stats[ev.pid];
      if (!ev.ok) {
        ++st.errors;
        if (report.notes.size() < 20) {
          report.notes.push_back(to_string(ev.pid) + ": " + ev.error);
        }
        continue;
      }
      ++st.samples;
      if (ev.margin.margin / ev.margin.scale < -config.tol) ++st.violations;
      if (ev.margin.margin < st.worst_margin) {
        st.worst_margin = ev.margin.margin;
        st.worst_digest = ev.margin.instance_digest;
      }
    }
  }

  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

long total_violations(const VerificationReport& report) {
  long v = 0;
  for (const auto& [pid, st] : report.stats) v += st.violations;
  return v;
}

nlohmann::json report_to_json(const VerificationReport& report, bool include_meta) {
  nlohmann::json j;
  for (const auto& [pid, st] : report.stats) {
    nlohmann::json s;
    s["samples"] = st.samples;
    s["violations"] = st.violations;
    s["errors"] = st.errors;
    if (st.samples > 0) {
      s["worst_margin"] = st.worst_margin;
      s["worst_digest"] = st.worst_digest;
    } else {
      s["worst_margin"] = nullptr;
      s["worst_digest"] = nullptr;
    }
    j[to_string(pid)] = std::move(s);
  }
  nlohmann::json echo;
  echo["class"] = to_string(report.config.kind);
  echo["samples"] = report.config.samples;
  echo["n_min"] = report.config.n_min;
  echo["n_max"] = report.config.n_max;
  nlohmann::json pids = nlohmann::json::array();
  for (PropertyId pid : report.config.pids) pids.push_back(to_string(pid));
  echo["pids"] = std::move(pids);
  echo["t_grid"] = report.config.t_grid;
  echo["k_set"] = report.config.k_set;
  echo["tol"] = report.config.tol;
  echo["alpha"] = report.config.alpha;
  echo["eig_floor"] = report.config.eig_floor;
  j["config_echo"] = std::move(echo);
  j["seed"] = report.config.seed;
  j["notes"] = report.notes;
  if (include_meta) {
    j["meta"] = nlohmann::json{{"wall_time_s", report.wall_time_s}};
  }
  return j;
}

// --- conjecture hunter ---------------------------------------------------------------------

namespace {

// omega(A^t) - omega^t(A) at search accuracy: spectral power when the guard
// passes, quadrature fallback otherwise.
double conjecture_margin(const MatrixRef& A, double t, double omega_a) {
  ComplexMatrix At;
  try {
    At = power_spectral(A, t);
  } catch (const Error&) {
    At = power_quadrature(A, t);
  }
  return numerical_radius(At).omega - std::pow(omega_a, t);
}

}  // namespace

HuntReport hunt_counterexample(const HuntConfig& config) {
  if (config.budget < 1) throw InvalidInput("hunt: budget must be >= 1");
  if (!(config.t_min > 0.0 && config.t_max < 1.0 && config.t_min < config.t_max)) {
    throw InvalidInput("hunt: t range must satisfy 0 < t_min < t_max < 1");
  }
  if (config.n_min < 1 || config.n_max < config.n_min) {
    throw InvalidInput("hunt: invalid dimension range");
  }
  const bool clamp_k = config.kind == GeneratorKind::accretive_dissipative;
  if (config.kind != GeneratorKind::accretive && !clamp_k &&
      config.kind != GeneratorKind::hpd) {
    throw InvalidInput("hunt: class must be accretive, ad or hpd");
  }

  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(config.seed);
  HuntReport rep;
  rep.seed = config.seed;

  ComplexMatrix H, K;
  double t = 0.0, omega_a = 0.0, margin = 0.0;
  double scale = config.perturb_scale;
  long reject_streak = 0;
  long evals = 0;

  auto consider = [&](const ComplexMatrix& A, double tt, double mg) {
    if (mg < rep.best_margin) {
      rep.best_margin = mg;
      rep.best_instance = A;
      rep.best_t = tt;
      rep.trace.push_back({evals, mg, tt});
    }
  };

  auto restart = [&]() {
    const int span = config.n_max - config.n_min + 1;
    GeneratorSpec gs;
    gs.kind = config.kind;
    gs.n = config.n_min + static_cast<int>(rng.raw() % static_cast<std::uint64_t>(span));
    gs.seed = rng.raw();
    gs.eig_floor = config.eig_floor;
    const ComplexMatrix A = generate(gs);
    const CartesianPair p = cartesian_parts(A);
    H = p.H;
    K = p.K;
    t = rng.uniform(config.t_min, config.t_max);
    omega_a = numerical_radius(A).omega;
    margin = conjecture_margin(A, t, omega_a);
    ++evals;
    consider(A, t, margin);
    scale = config.perturb_scale;
    reject_streak = 0;
    ++rep.restarts;
  };

  restart();
  while (evals < config.budget) {
    const int n = static_cast<int>(H.rows());
    ComplexMatrix Hc = project_spd(H + scale * hermitian_gaussian(n, rng), config.eig_floor);
    ComplexMatrix Kc = K + scale * hermitian_gaussian(n, rng);
    if (clamp_k) Kc = project_spd(Kc, config.eig_floor);
    if (config.kind == GeneratorKind::hpd) Kc.setZero();
    const double tc =
        std::clamp(t + 0.25 * scale * rng.gaussian(), config.t_min, config.t_max);
    const ComplexMatrix Ac = Hc + Complex(0.0, 1.0) * Kc;
    const double omega_c = numerical_radius(Ac).omega;
    const double mc = conjecture_margin(Ac, tc, omega_c);
    ++evals;
    consider(Ac, tc, mc);
    if (mc < margin) {
      H = std::move(Hc);
      K = std::move(Kc);
      t = tc;
      omega_a = omega_c;
      margin = mc;
      ++rep.accepted;
      reject_streak = 0;
    } else {
      ++reject_streak;
      if (reject_streak >= 500) {
        if (evals < config.budget) restart();
      } else if (reject_streak % 50 == 0) {
        scale *= 0.5;
      }
    }
  }
  rep.iterations = evals;

  rep.flagged = rep.best_margin < -config.flag_threshold;
  if (rep.flagged) {
    // Tightened re-evaluation: spectral vs tightened quadrature for A^t,
    // 10x radius grid, and the independent sphere-ascent oracle.
    const ComplexMatrix& A = rep.best_instance;
    std::string note;
    try {
      QuadratureOptions qo;
      qo.target_tol = 1e-12;
      ComplexMatrix At;
      double cross_gap = -1.0;
      const ComplexMatrix At_quad = power_quadrature(A, rep.best_t, qo);
      try {
        const ComplexMatrix At_spec = power_spectral(A, rep.best_t);
        cross_gap = spectral_norm(At_spec - At_quad);
        At = At_spec;
      } catch (const Error&) {
        At = At_quad;
      }
      RangeOptions ro;
      ro.grid = 20480;
      const double w_t =
          std::max(numerical_radius(At, ro).omega,
                   omega_brute_force(At, 100000, 20, mix_seed(config.seed, 0xa5c)));
      const double w_a =
          std::max(numerical_radius(A, ro).omega,
                   omega_brute_force(A, 100000, 20, mix_seed(config.seed, 0xb27)));
      rep.reverified_margin = w_t - std::pow(w_a, rep.best_t);
      const bool methods_agree =
          cross_gap < 0.0 || cross_gap <= 1e-7 * std::pow(w_a, rep.best_t);
      if (rep.reverified_margin < -config.flag_threshold && methods_agree) {
        rep.counterexample = true;
        note = "COUNTEREXAMPLE: margin " + format_double(rep.reverified_margin) +
               " confirmed at tightened accuracy (cross gap " + format_double(cross_gap) +
               ")";
      } else if (!methods_agree) {
        note = "rejected: spectral/quadrature cross gap " + format_double(cross_gap) +
               " attributes the candidate to numerical error";
      } else {
        note = "rejected: tightened margin " + format_double(rep.reverified_margin) +
               " attributes the candidate to numerical error";
      }
    } catch (const std::exception& e) {
      note = std::string("re-verification failed: ") + e.what();
    }
    rep.reverify_detail = note;
  }

  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

nlohmann::json hunt_to_json(const HuntReport& report, bool include_meta) {
  nlohmann::json j;
  j["best_margin"] = report.best_margin;
  j["best_t"] = report.best_t;
  j["best_instance"] =
      report.best_instance.size() > 0 ? matrix_to_json(report.best_instance) : nullptr;
  j["iterations"] = report.iterations;
  j["restarts"] = report.restarts;
  j["accepted"] = report.accepted;
  j["flagged"] = report.flagged;
  j["counterexample"] = report.counterexample;
  j["reverified_margin"] = report.reverified_margin;
  j["reverify_detail"] = report.reverify_detail;
  nlohmann::json trace = nlohmann::json::array();
  for (const HuntStep& s : report.trace) {
    trace.push_back(nlohmann::json{{"iter", s.iter}, {"margin", s.margin}, {"t", s.t}});
  }
  j["trace"] = std::move(trace);
  j["seed"] = report.seed;
  if (include_meta) {
    j["meta"] = nlohmann::json{{"wall_time_s", report.wall_time_s}};
  }
  return j;
}

}  // namespace nrt
