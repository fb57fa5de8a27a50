#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <span>
#include <tuple>
#include <vector>

#include "gnsstrade/constants.hpp"
#include "gnsstrade/error.hpp"
#include "gnsstrade/orbits.hpp"
#include "gnsstrade/threading.hpp"

// User grid construction, visibility/elevation, instantaneous and worst-site
// GDOP, coverage feasibility and single-failure GDOP statistics.

namespace gnsstrade::geometry {

struct GridPoint {
  double lat_deg = 0;
  double lon_deg = 0;
  Vec3 pos_km;  // Earth-fixed, on the sphere of radius r_e
};

struct UserGrid {
  std::vector<GridPoint> points;
  std::size_t size() const { return points.size(); }
};

// Deterministic Fibonacci (golden-angle) lattice: near equal-area, O(n).
inline UserGrid build_grid(std::size_t n_points) {
  if (n_points < 4) throw ModelError(ErrorCode::kInvalidInput, "grid needs at least 4 points");
  UserGrid grid;
  grid.points.resize(n_points);
  const double golden_angle = constants::kPi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n_points; ++i) {
    double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n_points);
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double az = golden_angle * static_cast<double>(i);
    Vec3 u{r * std::cos(az), r * std::sin(az), z};
    GridPoint p;
    p.lat_deg = constants::rad2deg(std::asin(z));
    p.lon_deg = constants::rad2deg(std::atan2(u.y, u.x));
    if (p.lon_deg >= 180.0) p.lon_deg -= 360.0;
    p.pos_km = u * constants::kEarthRadiusKm;
    grid.points[i] = p;
  }
  return grid;
}

// Geometric elevation of a satellite above the user's local horizon [deg].
inline double elevation_deg(const Vec3& user_km, const Vec3& sat_km) {
  if (sat_km.norm() <= user_km.norm())
    throw ModelError(ErrorCode::kInvalidInput, "satellite must be above the user");
  Vec3 up = user_km.normalized();
  Vec3 los = (sat_km - user_km).normalized();
  double s = std::clamp(up.dot(los), -1.0, 1.0);
  return constants::rad2deg(std::asin(s));
}

namespace detail {

// Accumulated normal matrix for rows (u_x, u_y, u_z, 1).
struct Normal4 {
  // Upper triangle of G^T G.
  double m[10] = {0};
  int rows = 0;

  void add_unit_los(double ux, double uy, double uz) {
    m[0] += ux * ux;
    m[1] += ux * uy;
    m[2] += ux * uz;
    m[3] += ux;
    m[4] += uy * uy;
    m[5] += uy * uz;
    m[6] += uy;
    m[7] += uz * uz;
    m[8] += uz;
    m[9] += 1.0;
    ++rows;
  }

  // trace((G^T G)^-1) via Cholesky; returns NaN when singular.
  double inverse_trace() const {
    double a[4][4] = {{m[0], m[1], m[2], m[3]},
                      {m[1], m[4], m[5], m[6]},
                      {m[2], m[5], m[7], m[8]},
                      {m[3], m[6], m[8], m[9]}};
    double L[4][4] = {};
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j <= i; ++j) {
        double s = a[i][j];
        for (int k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
        if (i == j) {
          if (s <= 1e-10) return std::numeric_limits<double>::quiet_NaN();
          L[i][i] = std::sqrt(s);
        } else {
          L[i][j] = s / L[j][j];
        }
      }
    }
    // trace(A^-1) = ||L^-1||_F^2
    double inv[4][4] = {};
    for (int c = 0; c < 4; ++c) {
      inv[c][c] = 1.0 / L[c][c];
      for (int i = c + 1; i < 4; ++i) {
        double s = 0;
        for (int k = c; k < i; ++k) s -= L[i][k] * inv[k][c];
        inv[i][c] = s / L[i][i];
      }
    }
    double tr = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j <= i; ++j) tr += inv[i][j] * inv[i][j];
    return tr;
  }
};

}  // namespace detail

// Instantaneous GDOP from explicit satellite positions.
inline double gdop_instant(const Vec3& user_km, std::span<const Vec3> visible_sats_km) {
  if (visible_sats_km.size() < 4)
    throw ModelError(ErrorCode::kInsufficientGeometry, "GDOP needs at least 4 satellites");
  detail::Normal4 normal;
  for (const Vec3& s : visible_sats_km) {
    Vec3 u = (s - user_km).normalized();
    normal.add_unit_los(u.x, u.y, u.z);
  }
  double tr = normal.inverse_trace();
  if (!(tr > 0))
    throw ModelError(ErrorCode::kSingularGeometry, "degenerate user-satellite geometry");
  return std::sqrt(tr);
}

struct GdopField {
  std::vector<double> per_point_avg;        // time-averaged GDOP per grid point
  double worst_site = 0;                    // max over per_point_avg
  std::map<int, double> per_latitude_worst; // worst per 1-degree latitude bin
  double coverage_fraction = 1.0;           // share of (point,epoch) samples with >=4 visible
  bool feasible = true;                     // 100% coverage and no singular samples
  std::size_t n_epochs = 0;
};

struct GeometryOptions {
  double mask_deg = 5.0;
  unsigned n_threads = std::thread::hardware_concurrency();
};

// Time-averaged GDOP per grid point over the ephemeris span; worst value and
// per-latitude profile. Points and epochs with fewer than 4 visible
// satellites (or singular geometry) mark the field as coverage-infeasible.
inline GdopField gdop_worst_site(const orbits::ConstellationEphemeris& eph, const UserGrid& grid,
                                 const GeometryOptions& opt = {}) {
  const std::size_t n_pts = grid.size();
  const std::size_t n_epochs = eph.n_epochs();
  const int n_sats = eph.n_sats;
  if (n_epochs == 0 || n_pts == 0)
    throw ModelError(ErrorCode::kInvalidInput, "empty ephemeris or grid");

  GdopField field;
  field.n_epochs = n_epochs;
  field.per_point_avg.assign(n_pts, 0.0);
  std::vector<std::size_t> bad_samples(n_pts, 0);

  const double sin_mask = std::sin(constants::deg2rad(opt.mask_deg));
  const double re = constants::kEarthRadiusKm;

  parallel_for(n_pts, std::max(1u, opt.n_threads), [&](std::size_t ip) {
    const Vec3 user = grid.points[ip].pos_km;
    const Vec3 up = user * (1.0 / re);
    std::vector<double> samples(n_epochs, 0.0);
    std::size_t bad = 0;
    for (std::size_t k = 0; k < n_epochs; ++k) {
      detail::Normal4 normal;
      const Vec3* sats = &eph.positions_km[k * static_cast<std::size_t>(n_sats)];
      for (int j = 0; j < n_sats; ++j) {
        double dx = sats[j].x - user.x;
        double dy = sats[j].y - user.y;
        double dz = sats[j].z - user.z;
        double rho = std::sqrt(dx * dx + dy * dy + dz * dz);
        double s = (up.x * dx + up.y * dy + up.z * dz);
        if (s < sin_mask * rho) continue;  // below elevation mask
        double inv = 1.0 / rho;
        normal.add_unit_los(dx * inv, dy * inv, dz * inv);
      }
      if (normal.rows < 4) {
        ++bad;
        continue;
      }
      double tr = normal.inverse_trace();
      if (!(tr > 0)) {
        ++bad;
        continue;
      }
      samples[k] = std::sqrt(tr);
    }
    bad_samples[ip] = bad;
    if (bad == 0) field.per_point_avg[ip] = pairwise_sum(samples) / static_cast<double>(n_epochs);
  });

  std::size_t total_bad = 0;
  for (std::size_t ip = 0; ip < n_pts; ++ip) total_bad += bad_samples[ip];
  field.coverage_fraction =
      1.0 - static_cast<double>(total_bad) / (static_cast<double>(n_pts) * static_cast<double>(n_epochs));
  field.feasible = (total_bad == 0);

  if (field.feasible) {
    double worst = 0;
    for (std::size_t ip = 0; ip < n_pts; ++ip) {
      double v = field.per_point_avg[ip];
      worst = std::max(worst, v);
      int lat_bin = static_cast<int>(std::lround(grid.points[ip].lat_deg));
      auto [it, inserted] = field.per_latitude_worst.try_emplace(lat_bin, v);
      if (!inserted) it->second = std::max(it->second, v);
    }
    field.worst_site = worst;
  } else {
    field.worst_site = std::numeric_limits<double>::infinity();
  }
  return field;
}

// Fraction of (point, epoch) samples with at least 4 visible satellites.
inline double coverage_check(const orbits::ConstellationEphemeris& eph, const UserGrid& grid,
                             double mask_deg = 5.0,
                             unsigned n_threads = std::thread::hardware_concurrency()) {
  const std::size_t n_pts = grid.size();
  const std::size_t n_epochs = eph.n_epochs();
  if (n_pts == 0 || n_epochs == 0)
    throw ModelError(ErrorCode::kInvalidInput, "empty ephemeris or grid");
  if (eph.n_sats == 0) return 0.0;

  const double sin_mask = std::sin(constants::deg2rad(mask_deg));
  std::vector<std::size_t> covered(n_pts, 0);
  parallel_for(n_pts, std::max(1u, n_threads), [&](std::size_t ip) {
    const Vec3 user = grid.points[ip].pos_km;
    const Vec3 up = user * (1.0 / constants::kEarthRadiusKm);
    std::size_t ok = 0;
    for (std::size_t k = 0; k < n_epochs; ++k) {
      int visible = 0;
      const Vec3* sats = &eph.positions_km[k * static_cast<std::size_t>(eph.n_sats)];
      for (int j = 0; j < eph.n_sats; ++j) {
        double dx = sats[j].x - user.x;
        double dy = sats[j].y - user.y;
        double dz = sats[j].z - user.z;
        double rho = std::sqrt(dx * dx + dy * dy + dz * dz);
        if ((up.x * dx + up.y * dy + up.z * dz) >= sin_mask * rho) {
          if (++visible >= 4) break;
        }
      }
      if (visible >= 4) ++ok;
    }
    covered[ip] = ok;
  });
  std::size_t total = 0;
  for (auto c : covered) total += c;
  return static_cast<double>(total) / (static_cast<double>(n_pts) * static_cast<double>(n_epochs));
}

// Median elevation-angle rate seen from the grid, per orbit altitude [mdeg/s].
// Lookup of the bundled representative values; throws for other altitudes.
inline double median_elevation_rate_mdegs(double altitude_km) {
  struct Entry {
    double h;
    double rate;
  };
  static constexpr Entry kTable[] = {{780, 66.4},   {1250, 59.9},  {8330, 14.2}, {12525, 9.4},
                                     {20188, 6.0},  {23229, 5.2},  {30967, 3.7}};
  for (const auto& e : kTable)
    if (std::abs(e.h - altitude_km) < 1e-6) return e.rate;
  throw ModelError(ErrorCode::kMissingTableEntry,
                   "no tabulated elevation rate for altitude " + std::to_string(altitude_km));
}

// Validation path: recompute the median |d(elev)/dt| over visible passes by
// finite differences on a coarse grid. Slower; used to sanity-check the table.
inline double median_elevation_rate_simulated_mdegs(const orbits::WalkerDelta& cfg,
                                                    std::size_t grid_points = 500,
                                                    double mask_deg = 5.0) {
  const double period = orbits::orbital_period_s(cfg.shell.altitude_km);
  auto eph = orbits::propagate(cfg, period, 0.5);
  auto grid = build_grid(grid_points);
  const double dt = eph.step_s();
  std::vector<double> rates;
  for (const auto& p : grid.points) {
    for (std::size_t k = 0; k + 1 < eph.n_epochs(); ++k) {
      for (int j = 0; j < eph.n_sats; ++j) {
        double e0 = elevation_deg(p.pos_km, eph.at(k, j));
        if (e0 < mask_deg) continue;
        double e1 = elevation_deg(p.pos_km, eph.at(k + 1, j));
        if (e1 < mask_deg) continue;
        rates.push_back(std::abs(e1 - e0) / dt * 1000.0);
      }
    }
  }
  if (rates.empty()) throw ModelError(ErrorCode::kInsufficientGeometry, "no visible passes");
  std::nth_element(rates.begin(), rates.begin() + static_cast<std::ptrdiff_t>(rates.size() / 2),
                   rates.end());
  return rates[rates.size() / 2];
}

struct FailureTrial {
  int removed_sat = -1;
  bool coverage_broken = false;
  double worst_site_delta = 0;
};

struct FailureStats {
  double baseline_worst = 0;
  std::vector<FailureTrial> trials;
  double max_delta = 0;
  double mean_delta = 0;
  int coverage_broken_trials = 0;
};

inline orbits::ConstellationEphemeris remove_satellite(const orbits::ConstellationEphemeris& eph,
                                                       int sat) {
  orbits::ConstellationEphemeris out;
  out.n_sats = eph.n_sats - 1;
  out.times_s = eph.times_s;
  out.positions_km.reserve(eph.n_epochs() * static_cast<std::size_t>(out.n_sats));
  for (std::size_t k = 0; k < eph.n_epochs(); ++k)
    for (int j = 0; j < eph.n_sats; ++j)
      if (j != sat) out.positions_km.push_back(eph.at(k, j));
  return out;
}

// Worst-site GDOP increase caused by removing single random satellites.
// Trials draw distinct satellites; deterministic for a fixed seed.
inline FailureStats failure_gdop_delta(const orbits::WalkerDelta& cfg,
                                       const orbits::ConstellationEphemeris& eph,
                                       const UserGrid& grid, int n_trials, std::uint64_t seed,
                                       const GeometryOptions& opt = {}) {
  if (n_trials < 0) throw ModelError(ErrorCode::kInvalidInput, "n_trials must be >= 0");
  FailureStats stats;
  GdopField base = gdop_worst_site(eph, grid, opt);
  if (!base.feasible)
    throw ModelError(ErrorCode::kConstraintViolation, "baseline constellation lacks coverage");
  stats.baseline_worst = base.worst_site;
  if (n_trials == 0) return stats;

  std::vector<int> candidates(static_cast<std::size_t>(cfg.n_sats));
  for (int i = 0; i < cfg.n_sats; ++i) candidates[static_cast<std::size_t>(i)] = i;
  std::mt19937_64 rng(seed);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  const int k_trials = std::min<int>(n_trials, cfg.n_sats);

  double sum = 0;
  int counted = 0;
  for (int t = 0; t < k_trials; ++t) {
    FailureTrial trial;
    trial.removed_sat = candidates[static_cast<std::size_t>(t)];
    auto degraded = remove_satellite(eph, trial.removed_sat);
    GdopField f = gdop_worst_site(degraded, grid, opt);
    if (!f.feasible) {
      trial.coverage_broken = true;
      ++stats.coverage_broken_trials;
    } else {
      trial.worst_site_delta = f.worst_site - base.worst_site;
      stats.max_delta = std::max(stats.max_delta, trial.worst_site_delta);
      sum += trial.worst_site_delta;
      ++counted;
    }
    stats.trials.push_back(trial);
  }
  if (counted > 0) stats.mean_delta = sum / counted;
  return stats;
}

// GDOP fields depend only on the constellation geometry, so the tradespace
// reuses one evaluation per unique (altitude, n_sats, inclination, n_planes).
class GdopCache {
 public:
  using Key = std::tuple<double, int, double, int>;

  struct Params {
    double duration_s = 86400.0;
    double prop_step_deg = 0.5;   // mean arg-of-latitude change per ephemeris step
    int dop_step_multiplier = 10; // DOP sampling step, in ephemeris steps
    double mask_deg = 5.0;
    int phasing_f = 1;
    unsigned n_threads = std::thread::hardware_concurrency();
  };

  GdopCache(const UserGrid& grid, Params params) : grid_(grid), params_(params) {}

  std::shared_ptr<const GdopField> get(double altitude_km, int n_sats, double inclination_deg,
                                       int n_planes) {
    Key key{altitude_km, n_sats, inclination_deg, n_planes};
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    orbits::WalkerDelta cfg{{altitude_km, inclination_deg}, n_sats, n_planes,
                            std::min(params_.phasing_f, n_planes - 1)};
    double dop_step_deg = params_.prop_step_deg * params_.dop_step_multiplier;
    auto eph = orbits::propagate(cfg, params_.duration_s, dop_step_deg);
    GeometryOptions opt;
    opt.mask_deg = params_.mask_deg;
    opt.n_threads = params_.n_threads;
    auto field = std::make_shared<GdopField>(gdop_worst_site(eph, grid_, opt));
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = cache_.emplace(key, field);
    return it->second;
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.size();
  }

  const UserGrid& grid() const { return grid_; }
  const Params& params() const { return params_; }

 private:
  UserGrid grid_;
  Params params_;
  mutable std::mutex mutex_;
  std::map<Key, std::shared_ptr<const GdopField>> cache_;
};

}  // namespace gnsstrade::geometry
