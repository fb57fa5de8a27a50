#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "gnsstrade/constants.hpp"
#include "gnsstrade/error.hpp"
#include "gnsstrade/vec3.hpp"

// Walker-Delta constellation generation and circular two-body propagation in
// an Earth-fixed frame, plus the closed-form orbit geometry primitives used
// by the power and link-budget models.

namespace gnsstrade::orbits {

struct OrbitShell {
  double altitude_km = 0;
  double inclination_deg = 0;
};

struct WalkerDelta {
  OrbitShell shell;
  int n_sats = 0;
  int n_planes = 0;
  int phasing_f = 1;  // inter-plane phasing parameter F

  int sats_per_plane() const { return n_sats / n_planes; }

  void validate() const {
    if (n_sats <= 0 || n_planes <= 0)
      throw ModelError(ErrorCode::kInvalidInput, "satellite/plane counts must be positive");
    if (n_sats % n_planes != 0)
      throw ModelError(ErrorCode::kConstraintViolation,
                       "n_sats (" + std::to_string(n_sats) + ") not divisible by n_planes (" +
                           std::to_string(n_planes) + ")");
    if (phasing_f < 0 || phasing_f >= n_planes)
      throw ModelError(ErrorCode::kConstraintViolation, "phasing F must satisfy 0 <= F < n_planes");
  }
};

// Time-indexed Earth-fixed satellite positions, uniform time step.
struct ConstellationEphemeris {
  std::vector<double> times_s;       // epoch offsets, uniform step
  std::vector<Vec3> positions_km;    // epoch-major, stride n_sats
  int n_sats = 0;

  const Vec3& at(std::size_t epoch, int sat) const {
    return positions_km[epoch * static_cast<std::size_t>(n_sats) + static_cast<std::size_t>(sat)];
  }
  std::size_t n_epochs() const { return times_s.size(); }
  double step_s() const { return times_s.size() > 1 ? times_s[1] - times_s[0] : 0.0; }
};

// Orbital period of a circular orbit at altitude h [km] above the mean radius.
inline double orbital_period_s(double altitude_km) {
  if (altitude_km <= 0) throw ModelError(ErrorCode::kInvalidInput, "altitude must be positive");
  double a = constants::kEarthRadiusKm + altitude_km;
  return 2.0 * constants::kPi * std::sqrt(a * a * a / constants::kMuEarthKm3S2);
}

// Maximum umbra duration per orbit for a circular orbit at altitude h [km].
inline double max_eclipse_duration_s(double altitude_km) {
  double period = orbital_period_s(altitude_km);
  double ratio = constants::kEarthRadiusKm / (constants::kEarthRadiusKm + altitude_km);
  return period * std::asin(ratio) / 3.0;
}

// Maximum user-satellite slant range [km] at the given minimum elevation.
inline double max_slant_range_km(double altitude_km, double elev_min_deg) {
  if (altitude_km <= 0) throw ModelError(ErrorCode::kInvalidInput, "altitude must be positive");
  if (elev_min_deg < 0 || elev_min_deg > 90)
    throw ModelError(ErrorCode::kInvalidInput, "elevation must lie in [0, 90] deg");
  double re = constants::kEarthRadiusKm;
  double eta = constants::deg2rad(elev_min_deg);
  double ra = re + altitude_km;
  return -re * std::sin(eta) + std::sqrt(ra * ra - re * re * std::cos(eta) * std::cos(eta));
}

struct OrbitalSlot {
  double raan_deg = 0;
  double arg_lat_deg = 0;  // argument of latitude at epoch (true anomaly for circular orbits)
};

// Walker-Delta slot assignment: planes evenly spread over 360 deg of RAAN,
// satellites evenly spread in-plane, inter-plane phase offset F*360/T.
inline std::vector<OrbitalSlot> walker_delta_elements(const WalkerDelta& cfg) {
  cfg.validate();
  const int per_plane = cfg.sats_per_plane();
  std::vector<OrbitalSlot> slots;
  slots.reserve(static_cast<std::size_t>(cfg.n_sats));
  for (int p = 0; p < cfg.n_planes; ++p) {
    double raan = 360.0 * p / cfg.n_planes;
    double phase = 360.0 * cfg.phasing_f * p / cfg.n_sats;
    for (int s = 0; s < per_plane; ++s) {
      double u0 = std::fmod(360.0 * s / per_plane + phase, 360.0);
      slots.push_back({raan, u0});
    }
  }
  return slots;
}

// Inertial position of a satellite on a circular inclined orbit.
inline Vec3 circular_orbit_position_eci(double radius_km, double inclination_rad, double raan_rad,
                                        double arg_lat_rad) {
  double cu = std::cos(arg_lat_rad), su = std::sin(arg_lat_rad);
  double ci = std::cos(inclination_rad), si = std::sin(inclination_rad);
  double co = std::cos(raan_rad), so = std::sin(raan_rad);
  return {radius_km * (co * cu - so * su * ci), radius_km * (so * cu + co * su * ci),
          radius_km * su * si};
}

inline Vec3 eci_to_ecef(const Vec3& p, double gha_rad) {
  double c = std::cos(gha_rad), s = std::sin(gha_rad);
  return {p.x * c + p.y * s, -p.x * s + p.y * c, p.z};
}

// Propagate the constellation as circular two-body orbits and rotate into the
// Earth-fixed frame (uniform rotation, Greenwich on +x at t=0). step_deg is
// the mean change in argument of latitude between samples.
inline ConstellationEphemeris propagate(const WalkerDelta& cfg, double duration_s,
                                        double step_deg) {
  cfg.validate();
  if (duration_s <= 0 || step_deg <= 0)
    throw ModelError(ErrorCode::kInvalidInput, "duration and step must be positive");

  const double radius = constants::kEarthRadiusKm + cfg.shell.altitude_km;
  const double period = orbital_period_s(cfg.shell.altitude_km);
  const double rate_rad_s = 2.0 * constants::kPi / period;
  const double step_s = period * step_deg / 360.0;
  const double inc = constants::deg2rad(cfg.shell.inclination_deg);

  const auto slots = walker_delta_elements(cfg);
  const auto n_epochs = static_cast<std::size_t>(std::floor(duration_s / step_s)) + 1;

  ConstellationEphemeris eph;
  eph.n_sats = cfg.n_sats;
  eph.times_s.resize(n_epochs);
  eph.positions_km.resize(n_epochs * slots.size());
  for (std::size_t k = 0; k < n_epochs; ++k) {
    double t = static_cast<double>(k) * step_s;
    eph.times_s[k] = t;
    double gha = constants::kEarthRotationRadS * t;
    for (std::size_t j = 0; j < slots.size(); ++j) {
      double u = constants::deg2rad(slots[j].arg_lat_deg) + rate_rad_s * t;
      Vec3 eci = circular_orbit_position_eci(radius, inc, constants::deg2rad(slots[j].raan_deg), u);
      eph.positions_km[k * slots.size() + j] = eci_to_ecef(eci, gha);
    }
  }
  return eph;
}

}  // namespace gnsstrade::orbits
