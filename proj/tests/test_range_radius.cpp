#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "nrt/frac_power.hpp"
#include "nrt/range_radius.hpp"
#include "oracles.hpp"

using namespace nrt;
using oracle::Rng;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix shift2(Complex a, Complex b) {
  ComplexMatrix M(2, 2);
  M << a, 0, 0, b;
  return M;
}

ComplexMatrix jordan01() {
  ComplexMatrix M(2, 2);
  M << 0, 1, 0, 0;
  return M;
}

}  // namespace

TEST_SUITE_BEGIN("range_radius");

TEST_CASE("boundary of trivial ranges") {
  const auto id_pts = range_boundary(ComplexMatrix::Identity(2, 2), 8);
  for (const BoundaryPoint& p : id_pts) CHECK(std::abs(p.z - Complex(1, 0)) <= 1e-14);

  const auto seg_pts = range_boundary(shift2(0, 1), 64);
  for (const BoundaryPoint& p : seg_pts) {
    CHECK(std::abs(p.z.imag()) <= 1e-14);
    CHECK(p.z.real() >= -1e-14);
    CHECK(p.z.real() <= 1.0 + 1e-14);
  }
}

TEST_CASE("boundary of the nilpotent shift is the half-radius circle") {
  const auto pts = range_boundary(jordan01(), 256);
  for (const BoundaryPoint& p : pts) CHECK(std::abs(std::abs(p.z) - 0.5) <= 1e-6);
  CHECK_THROWS_AS(range_boundary(jordan01(), 3), InvalidInput);
}

TEST_CASE("numerical radius on fixed instances") {
  const RadiusReport id = numerical_radius(ComplexMatrix::Identity(2, 2));
  CHECK(id.omega == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(id.gamma == doctest::Approx(0.0).epsilon(1e-12));

  const RadiusReport sh = numerical_radius(jordan01());
  CHECK(sh.omega == doctest::Approx(0.5).epsilon(1e-9));

  // W = segment from 1+i to 2; the farthest point is the endpoint 2.
  const RadiusReport dg = numerical_radius(shift2(Complex(1, 1), 2));
  CHECK(dg.omega == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(dg.gamma == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("radius report invariants: witness, gamma, theta_star") {
  Rng rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + trial % 6;
    const ComplexMatrix A = oracle::random_matrix(n, rng);
    const RadiusReport r = numerical_radius(A);
    CHECK(std::abs(r.witness.norm() - 1.0) <= 1e-12);
    const Complex z = oracle::quad_form(A, r.witness);
    CHECK(std::abs(std::abs(z) - r.omega) <= 1e-9 * std::max(1.0, r.omega));
    if (r.omega > 1e-12) {
      CHECK(std::abs(std::arg(z) - r.gamma) <= 1e-9);
      const double wrap = std::remainder(r.theta_star + r.gamma, 2.0 * kPi);
      CHECK(std::abs(wrap) <= 1e-9);
    }
  }
}

TEST_CASE("radius agrees with the sphere-ascent oracle") {
  Rng rng(22);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + trial % 4;
    const ComplexMatrix A = oracle::random_matrix(n, rng);
    const RadiusReport r = numerical_radius(A);
    const double probe = oracle::omega_sphere_ascent(A, 20000, 12, 1000 + trial);
    // probes only ever under-shoot the radius
    CHECK(r.omega >= probe - 1e-9);
    CHECK(std::abs(r.omega - probe) <= 1e-6 * std::max(1.0, r.omega));
  }
}

TEST_CASE("no rotated real part exceeds omega (sup identity)") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    const ComplexMatrix A = oracle::random_matrix(n, rng);
    const RadiusReport r = numerical_radius(A);
    for (int j = 0; j < 512; ++j) {
      const double theta = 2.0 * kPi * (j + 0.5) / 512;
      CHECK(rotated_real_lambda_max(A, theta) <= r.omega + 1e-9);
    }
  }
}

TEST_CASE("omega is attained at the reported angle") {
  Rng rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix A = oracle::random_matrix(2 + trial % 5, rng);
    const RadiusReport r = numerical_radius(A);
    const Complex ph(std::cos(-r.gamma), std::sin(-r.gamma));
    const ComplexMatrix M = ph * A;
    const double nrm = spectral_norm((0.5 * (M + M.adjoint())).eval());
    CHECK(std::abs(nrm - r.omega) <= 1e-8 * std::max(1.0, r.omega));
  }
}

TEST_CASE("radius is rotation covariant and absolutely homogeneous") {
  Rng rng(25);
  for (int trial = 0; trial < 15; ++trial) {
    const ComplexMatrix A = oracle::random_matrix(2 + trial % 4, rng);
    const double w = numerical_radius(A).omega;
    const double phi = rng.uniform(-kPi, kPi);
    const Complex ph(std::cos(phi), std::sin(phi));
    CHECK(numerical_radius((ph * A).eval()).omega == doctest::Approx(w).epsilon(1e-9));
    const Complex c(rng.gaussian(), rng.gaussian());
    CHECK(numerical_radius((c * A).eval()).omega ==
          doctest::Approx(std::abs(c) * w).epsilon(1e-9));
  }
}

TEST_CASE("accretive-dissipative matrices attain omega in the open first quadrant") {
  Rng rng(26);
  for (int trial = 0; trial < 15; ++trial) {
    const ComplexMatrix A = oracle::random_accretive_dissipative(2 + trial % 5, rng);
    const RadiusReport r = numerical_radius(A);
    CHECK(r.gamma > 0.0);
    CHECK(r.gamma < kPi / 2.0);
  }
}

TEST_CASE("sector angle on fixed instances") {
  CHECK(sector_angle(shift2(1, 2)) <= 1e-9);
  CHECK(sector_angle(shift2(Complex(1, 1), Complex(1, -1))) ==
        doctest::Approx(kPi / 4).epsilon(1e-8));
  ComplexMatrix T(2, 2);
  T << 1, 2, 0, 1;
  CHECK_THROWS_AS(sector_angle(T), NotAccretive);
}

TEST_CASE("classification flags on fixed instances") {
  const SectorReport ad = classify(shift2(Complex(1, 1), Complex(2, 1)));
  CHECK(ad.accretive);
  CHECK(ad.dissipative);
  CHECK(ad.accretive_dissipative);
  CHECK(ad.alpha.has_value());
  CHECK_FALSE(ad.zero_in_range);

  const SectorReport rot = classify((Complex(0, 1) * ComplexMatrix::Identity(2, 2)).eval());
  CHECK_FALSE(rot.accretive);
  CHECK(rot.dissipative);
  CHECK_FALSE(rot.alpha.has_value());

  const SectorReport ind = classify(shift2(1, -1));
  CHECK_FALSE(ind.accretive);
  CHECK(ind.zero_in_range);
  CHECK(ind.crosses_negative_axis);
}

TEST_CASE("hull certificates on a disk through the origin") {
  // W([[0,1],[0,0]]) is the closed disk of radius 1/2 about 0.
  const SectorReport disk = classify(jordan01());
  CHECK(disk.zero_in_range);
  CHECK(disk.crosses_negative_axis);
}

TEST_CASE("accretive rotation on fixed instances") {
  CHECK(std::abs(accretive_rotation(ComplexMatrix::Identity(2, 2))) <= 1e-9);

  const ComplexMatrix iI = Complex(0, 1) * ComplexMatrix::Identity(2, 2);
  const double th = accretive_rotation(iI);
  CHECK(rotated_real_lambda_min(iI, th) > 0.0);
  CHECK(std::abs(std::remainder(th + kPi / 2.0, 2.0 * kPi)) <= 1e-6);

  CHECK_THROWS_AS(accretive_rotation(jordan01()), ZeroInRange);
}

TEST_CASE("rotation found for any matrix with 0 outside W(A)") {
  Rng rng(27);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix A = oracle::random_accretive(2 + trial % 4, rng);
    const double phi = rng.uniform(-kPi, kPi);
    const ComplexMatrix B = Complex(std::cos(phi), std::sin(phi)) * A;
    const double th = accretive_rotation(B);
    CHECK(rotated_real_lambda_min(B, th) > 0.0);
  }
}

TEST_CASE("sector angle shrinks monotonically under fractional powers") {
  Rng rng(28);
  for (int trial = 0; trial < 8; ++trial) {
    const ComplexMatrix A = oracle::random_accretive(2 + trial % 3, rng);
    double prev = 0.0;
    for (double t : {0.25, 0.5, 0.75, 1.0}) {
      const double a = sector_angle(fractional_power(A, t).value);
      CHECK(prev <= a + 1e-6);
      prev = a;
    }
  }
}

TEST_CASE("boundary CSV format") {
  const auto pts = range_boundary(shift2(Complex(0.25, 1), 1), 8);
  std::ostringstream os;
  write_boundary_csv(os, pts);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "theta,re,im");
  int rows = 0;
  while (std::getline(is, line)) {
    double th = 0, re = 0, im = 0;
    CHECK(std::sscanf(line.c_str(), "%lg,%lg,%lg", &th, &re, &im) == 3);
    CHECK(th == pts[static_cast<std::size_t>(rows)].theta);  // 17 digits round-trip
    CHECK(re == pts[static_cast<std::size_t>(rows)].z.real());
    CHECK(im == pts[static_cast<std::size_t>(rows)].z.imag());
    ++rows;
  }
  CHECK(rows == 8);
}

TEST_SUITE_END();
