#pragma once

#include <cstdint>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nrt/frac_power.hpp"
#include "nrt/matrix_core.hpp"
#include "nrt/range_radius.hpp"

namespace nrt {

enum class GeneratorKind {
  hpd,
  accretive,
  dissipative,
  accretive_dissipative,
  sectorial,
  generic,
};

std::string to_string(GeneratorKind k);
std::optional<GeneratorKind> generator_kind_from_string(const std::string& s);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::generic;
  int n = 2;
  std::uint64_t seed = 0;
  double alpha = 0.0;      // target sector half-angle (sectorial kind only)
  double eig_floor = 1e-3;
};

// Deterministic in the seed; class membership is guaranteed by construction
// (hpd: G*G + floor*I; accretive: PD H + i indefinite K; and so on).
ComplexMatrix generate(const GeneratorSpec& spec);

// Identifiers of the verified claims; see evaluate_property for the margin
// definition of each.
enum class PropertyId {
  P1, P2, P3, P4, P5, P6, P7, P8, P9, P10, P11, P12, P13, P14,
};

std::string to_string(PropertyId pid);
std::optional<PropertyId> property_from_string(const std::string& s);
std::vector<PropertyId> all_properties();

struct PropertyParams {
  std::optional<double> t;
  std::optional<long> k;
  std::optional<double> m;
  std::optional<double> theta;
};

struct PropertyMargin {
  PropertyId pid = PropertyId::P1;
  double margin = 0.0;  // signed slack; >= 0 iff the claim held on this instance
  double scale = 1.0;   // max(1, omega(A)); violations gate on margin/scale
  PropertyParams params;
  std::string instance_digest;
  std::string detail;
};

// Pure memoization of per-instance quantities (omega, powers, angles) shared
// across the pid/parameter grid of one instance. Optional; results are
// identical with or without it.
struct InstanceCache {
  std::optional<RadiusReport> radius;
  std::optional<CartesianPair> parts;
  std::optional<double> alpha;
  std::optional<double> norm;
  std::map<double, ComplexMatrix> frac_pow;
  std::map<double, double> frac_disc;
  std::map<double, double> omega_frac;
  std::map<double, double> alpha_frac;
  std::map<long, ComplexMatrix> int_pow;
  std::map<long, double> omega_int;
};

// Margin >= 0 iff the claim holds on this instance:
//   P1  omega^k(A) - omega(A^k)            any A, integer k >= 1
//   P2  omega(A^{1/k}) - omega^{1/k}(A)    accretive A
//   P3  omega(A^t) - omega^t(A)            accretive-dissipative A, t in (0,1)
//   P4  omega(A^t) - omega^t(A)            accretive A, t in (0, 1/2)
//   P5  lambda_min(Re(A^t) - (Re A)^t)     accretive A
//   P6  t*alpha(A) - alpha(A^t)            accretive A
//   P7  min eig of Re(A^t), Im(A^t)        accretive-dissipative A
//   P8  inverse Cartesian structure        accretive-dissipative A
//   P9  chain omega(A^t)=||A^t||=||A||^t=omega^t(A)   Hermitian PD A
//   P10 omega attained at gamma            any A
//   P11 (e^{i theta}A)^t = e^{i t theta} A^t   accretive A, |theta| < pi/2
//   P12 sup_theta ||Re(e^{i theta}A)|| <= omega over a fresh probe grid
//   P13 omega^m(A) - omega(A^m)            A and A^k accretive, 2 <= m <= k
//   P14 omega(A^t) - omega^t(A)            accretive A (conjecture; recorded,
//                                          never asserted nonnegative)
PropertyMargin evaluate_property(PropertyId pid, const MatrixRef& A,
                                 const PropertyParams& params,
                                 InstanceCache* cache = nullptr);

struct SuiteConfig {
  GeneratorKind kind = GeneratorKind::generic;
  int n_min = 1;
  int n_max = 8;
  int samples = 100;
  std::vector<PropertyId> pids;
  std::vector<double> t_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<long> k_set = {2, 3, 4};
  double tol = 1e-8;
  std::uint64_t seed = 0;
  double alpha = 1.0;  // sectorial target angle
  double eig_floor = 1e-3;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct PidStats {
  long samples = 0;
  long violations = 0;
  long errors = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::string worst_digest;
};

struct VerificationReport {
  std::map<PropertyId, PidStats> stats;
  SuiteConfig config;
  std::vector<std::string> notes;  // first few instance-level error messages
  double wall_time_s = 0.0;
};

// Instance x pid x parameter sweep; instance-level errors are recorded in
// the report, never thrown. Deterministic for a fixed config (independent
// of thread count).
VerificationReport run_suite(const SuiteConfig& config);

long total_violations(const VerificationReport& report);

nlohmann::json report_to_json(const VerificationReport& report, bool include_meta = true);

struct HuntConfig {
  int n_min = 2;
  int n_max = 6;
  double t_min = 0.5;
  double t_max = 0.95;
  long budget = 1000;
  std::uint64_t seed = 0;
  double perturb_scale = 0.1;
  GeneratorKind kind = GeneratorKind::accretive;  // or accretive_dissipative control
  double eig_floor = 1e-3;
  double flag_threshold = 1e-4;  // margins below -threshold get re-verified
};

struct HuntStep {
  long iter;
  double margin;
  double t;
};

struct HuntReport {
  double best_margin = std::numeric_limits<double>::infinity();
  ComplexMatrix best_instance;
  double best_t = 0.0;
  long iterations = 0;
  long restarts = 0;
  long accepted = 0;
  std::vector<HuntStep> trace;  // improvement timeline
  bool flagged = false;          // search-accuracy margin fell below -threshold
  bool counterexample = false;   // confirmed at tightened accuracy
  double reverified_margin = 0.0;
  std::string reverify_detail;
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
};

// Greedy hill climbing over (H, K, t) from random accretive restarts,
// minimizing the conjecture margin omega(A^t) - omega^t(A). Candidates below
// -flag_threshold are re-verified at tightened accuracy (finer radius grid,
// tightened quadrature, independent sphere-ascent oracle) before the
// COUNTEREXAMPLE flag is raised.
HuntReport hunt_counterexample(const HuntConfig& config);

nlohmann::json hunt_to_json(const HuntReport& report, bool include_meta = true);

// Independent numerical-radius lower bound: random unit-vector probes plus
// projected-gradient ascent restarts. Shares no code path with
// numerical_radius (matrix-vector products only, no eigensolves).
double omega_brute_force(const MatrixRef& A, int probes, int restarts, std::uint64_t seed);

// FNV-1a over the bit patterns of the entries; stable across runs.
std::string matrix_digest(const MatrixRef& A);

}  // namespace nrt
