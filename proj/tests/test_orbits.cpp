#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "gnsstrade/orbits.hpp"

using namespace gnsstrade;
using namespace gnsstrade::orbits;
using Catch::Approx;

namespace {

// Independent re-evaluation of the period/eclipse closed forms (long double,
// mean-motion formulation) used as the oracle for the production path.
long double oracle_period_s(long double h) {
  const long double mu = 398600.4418L, re = 6378.137L;
  long double a = re + h;
  long double n = std::sqrt(mu / (a * a * a));
  return 2.0L * 3.141592653589793238462643383279502884L / n;
}

long double oracle_eclipse_s(long double h) {
  const long double re = 6378.137L;
  return oracle_period_s(h) * std::asin(re / (re + h)) / 3.0L;
}

// Law-of-cosines slant range oracle: central angle from the elevation, then
// the triangle user-center-satellite.
double oracle_slant_range_km(double h, double elev_deg) {
  const double re = 6378.137;
  double eta = constants::deg2rad(elev_deg);
  double psi = std::acos(re * std::cos(eta) / (re + h)) - eta;
  return std::sqrt(re * re + (re + h) * (re + h) - 2.0 * re * (re + h) * std::cos(psi));
}

Vec3 rotate_z(const Vec3& p, double angle_rad) {
  double c = std::cos(angle_rad), s = std::sin(angle_rad);
  return {p.x * c - p.y * s, p.x * s + p.y * c, p.z};
}

}  // namespace

TEST_CASE("orbital period matches the closed-form oracle") {
  for (double h : constants::kAltitudeOptionsKm) {
    double got = orbital_period_s(h);
    REQUIRE(got == Approx(static_cast<double>(oracle_period_s(h))).epsilon(1e-9));
  }
  // Spot values for the lowest and the half-sidereal-day shells.
  REQUIRE(orbital_period_s(780) == Approx(6027.0).epsilon(5e-4));
  REQUIRE(orbital_period_s(20188) == Approx(43095.0).epsilon(5e-4));
}

TEST_CASE("orbital period is monotone in altitude") {
  const auto& alts = constants::kAltitudeOptionsKm;
  for (std::size_t i = 0; i + 1 < alts.size(); ++i)
    REQUIRE(orbital_period_s(alts[i]) < orbital_period_s(alts[i + 1]));
  REQUIRE_THROWS_AS(orbital_period_s(0), ModelError);
}

TEST_CASE("maximum eclipse duration") {
  for (double h : constants::kAltitudeOptionsKm) {
    double got = max_eclipse_duration_s(h);
    REQUIRE(got == Approx(static_cast<double>(oracle_eclipse_s(h))).epsilon(1e-9));
    REQUIRE(got < orbital_period_s(h) / 2.0);  // geometric bound
  }
  REQUIRE(max_eclipse_duration_s(780) == Approx(2209.0).epsilon(2e-3));
  REQUIRE(max_eclipse_duration_s(20188) == Approx(3483.0).epsilon(2e-3));
}

TEST_CASE("maximum slant range") {
  // Zenith case is exact.
  for (double h : constants::kAltitudeOptionsKm)
    REQUIRE(max_slant_range_km(h, 90.0) == Approx(h).margin(1e-9));
  // Independent law-of-cosines evaluation.
  for (double h : constants::kAltitudeOptionsKm)
    for (double e : {0.0, 5.0, 10.0, 30.0, 60.0})
      REQUIRE(max_slant_range_km(h, e) == Approx(oracle_slant_range_km(h, e)).epsilon(1e-9));
  REQUIRE(max_slant_range_km(20188, 5.0) == Approx(25240.0).epsilon(1e-3));
  // Direct evaluation at the lowest shell; see the notes on the 5 deg value.
  REQUIRE(max_slant_range_km(780, 5.0) == Approx(2740.7).epsilon(1e-3));
  REQUIRE_THROWS_AS(max_slant_range_km(780, -1.0), ModelError);
  REQUIRE_THROWS_AS(max_slant_range_km(780, 91.0), ModelError);
}

TEST_CASE("walker slots: single plane even spacing") {
  WalkerDelta cfg{{20188, 56}, 4, 1, 0};
  auto slots = walker_delta_elements(cfg);
  REQUIRE(slots.size() == 4);
  std::vector<double> anomalies;
  for (const auto& s : slots) {
    REQUIRE(s.raan_deg == 0.0);
    anomalies.push_back(s.arg_lat_deg);
  }
  std::sort(anomalies.begin(), anomalies.end());
  REQUIRE(anomalies == std::vector<double>{0, 90, 180, 270});
}

TEST_CASE("walker slots: 24/6/1 reference pattern") {
  WalkerDelta cfg{{20188, 56}, 24, 6, 1};
  auto slots = walker_delta_elements(cfg);
  REQUIRE(slots.size() == 24);
  std::vector<double> raans;
  for (const auto& s : slots) raans.push_back(s.raan_deg);
  std::sort(raans.begin(), raans.end());
  raans.erase(std::unique(raans.begin(), raans.end()), raans.end());
  REQUIRE(raans == std::vector<double>{0, 60, 120, 180, 240, 300});
  // 4 satellites per plane, spaced 90 degrees.
  for (int p = 0; p < 6; ++p) {
    std::vector<double> in_plane;
    for (const auto& s : slots)
      if (s.raan_deg == 60.0 * p) in_plane.push_back(s.arg_lat_deg);
    REQUIRE(in_plane.size() == 4);
    std::sort(in_plane.begin(), in_plane.end());
    for (int k = 1; k < 4; ++k)
      REQUIRE(in_plane[k] - in_plane[k - 1] == Approx(90.0).margin(1e-12));
  }
}

TEST_CASE("walker slots: inter-plane phase offset") {
  WalkerDelta cfg{{20188, 56}, 6, 3, 1};
  auto slots = walker_delta_elements(cfg);
  // Plane k leads by k * F * 360 / T = k * 60 degrees.
  for (int p = 0; p < 3; ++p) {
    std::vector<double> in_plane;
    for (const auto& s : slots)
      if (s.raan_deg == Approx(120.0 * p)) in_plane.push_back(s.arg_lat_deg);
    REQUIRE(in_plane.size() == 2);
    std::sort(in_plane.begin(), in_plane.end());
    REQUIRE(in_plane[0] == Approx(60.0 * p).margin(1e-12));
  }
}

TEST_CASE("walker validation rejects bad configurations") {
  REQUIRE_THROWS_AS(walker_delta_elements({{20188, 56}, 27, 4, 1}), ModelError);
  REQUIRE_THROWS_AS(walker_delta_elements({{20188, 56}, 24, 6, 6}), ModelError);
  REQUIRE_THROWS_AS(walker_delta_elements({{20188, 56}, 0, 1, 0}), ModelError);
}

TEST_CASE("propagation conserves the orbit radius") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> alt_pick(0, 6);
  for (int trial = 0; trial < 5; ++trial) {
    double h = constants::kAltitudeOptionsKm[alt_pick(rng)];
    WalkerDelta cfg{{h, 56}, 12, 3, 1};
    auto eph = propagate(cfg, 7200.0, 5.0);
    double expected = constants::kEarthRadiusKm + h;
    for (const auto& p : eph.positions_km)
      REQUIRE(p.norm() == Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("satellite returns to the same inertial position after one period") {
  WalkerDelta cfg{{20188, 56}, 4, 2, 1};
  double period = orbital_period_s(20188);
  auto eph = propagate(cfg, period + 1.0, 0.5);  // step = period / 720
  REQUIRE(eph.n_epochs() >= 721);
  for (int sat = 0; sat < cfg.n_sats; ++sat) {
    Vec3 start = eph.at(0, sat);
    // Undo the Earth rotation accumulated over exactly one period.
    Vec3 wrapped = rotate_z(eph.at(720, sat), constants::kEarthRotationRadS * period);
    REQUIRE((wrapped - start).norm() < 1e-5);
  }
}

TEST_CASE("walker symmetry: rotation by a plane spacing maps the set onto itself") {
  // For zero inter-plane phasing the satellite positions themselves map onto
  // each other; with phasing the pattern maps onto itself after advancing
  // every satellite by F * 360 / T of orbit phase.
  for (int f : {0, 2}) {
    WalkerDelta cfg{{12525, 64}, 30, 5, f};
    auto slots = walker_delta_elements(cfg);
    const double radius = constants::kEarthRadiusKm + cfg.shell.altitude_km;
    const double inc = constants::deg2rad(cfg.shell.inclination_deg);
    const double spacing = constants::deg2rad(360.0 / cfg.n_planes);
    const double phase_shift = constants::deg2rad(360.0 * f / cfg.n_sats);
    for (const auto& s : slots) {
      Vec3 pos = circular_orbit_position_eci(radius, inc, constants::deg2rad(s.raan_deg),
                                             constants::deg2rad(s.arg_lat_deg) + phase_shift);
      Vec3 rotated = rotate_z(pos, spacing);
      double best = 1e30;
      for (const auto& o : slots) {
        Vec3 other = circular_orbit_position_eci(radius, inc, constants::deg2rad(o.raan_deg),
                                                 constants::deg2rad(o.arg_lat_deg));
        best = std::min(best, (rotated - other).norm());
      }
      REQUIRE(best < 1e-6);
    }
  }
}

TEST_CASE("propagation input validation") {
  WalkerDelta cfg{{20188, 56}, 4, 2, 1};
  REQUIRE_THROWS_AS(propagate(cfg, -1.0, 0.5), ModelError);
  REQUIRE_THROWS_AS(propagate(cfg, 60.0, 0.0), ModelError);
}
