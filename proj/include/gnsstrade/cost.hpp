#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gnsstrade/error.hpp"

// 30-year space segment cost: flight-unit production with a learning curve,
// launch manifesting on Soyuz-class performance (per-kg fallback above it),
// and scenario operations cost.

namespace gnsstrade::cost {

struct BusCatalogEntry {
  std::string name;
  double max_dry_mass_kg = 0;
  double unit_cost_musd = 0;
};

inline std::vector<BusCatalogEntry> default_bus_catalog() {
  return {
      {"ELiTe 1000", 350, 23.11}, {"SSTL 600", 540, 39.90},  {"OHB Smart MEO", 660, 45.70},
      {"ELiTe 1000", 800, 49.72}, {"AS-4000", 1453, 59.94},  {"A2100", 2269, 209.47},
  };
}

struct BusSelection {
  BusCatalogEntry bus;
  bool extrapolated = false;  // mass exceeded the largest catalog entry
};

// Cheapest bus whose mass allowance covers the dry mass; beyond the catalog,
// the largest entry's cost is scaled linearly by mass and flagged.
inline BusSelection select_bus(double m_dry_kg, const std::vector<BusCatalogEntry>& catalog) {
  if (m_dry_kg <= 0) throw ModelError(ErrorCode::kInvalidInput, "dry mass must be positive");
  if (catalog.empty()) throw ModelError(ErrorCode::kInvalidInput, "empty bus catalog");
  const BusCatalogEntry* best = nullptr;
  const BusCatalogEntry* largest = &catalog.front();
  for (const auto& e : catalog) {
    if (e.max_dry_mass_kg > largest->max_dry_mass_kg) largest = &e;
    if (e.max_dry_mass_kg >= m_dry_kg && (!best || e.unit_cost_musd < best->unit_cost_musd))
      best = &e;
  }
  if (best) return {*best, false};
  BusCatalogEntry extrapolated = *largest;
  extrapolated.unit_cost_musd = largest->unit_cost_musd * (m_dry_kg / largest->max_dry_mass_kg);
  extrapolated.max_dry_mass_kg = m_dry_kg;
  return {extrapolated, true};
}

// Flight units needed over the 30-year horizon.
inline int flight_units(int n_sats, int lifetime_yr, int horizon_yr = 30) {
  if (n_sats <= 0 || lifetime_yr <= 0)
    throw ModelError(ErrorCode::kInvalidInput, "counts must be positive");
  if (horizon_yr % lifetime_yr != 0)
    throw ModelError(ErrorCode::kInvalidInput, "horizon must be a multiple of the lifetime");
  return n_sats * (horizon_yr / lifetime_yr);
}

// Learning-curve production cost [$M] for n identical flight units.
inline double production_cost_musd(double c_bus_musd, int n_units, double learning = 0.85) {
  if (learning <= 0 || learning > 1)
    throw ModelError(ErrorCode::kInvalidInput, "learning factor must lie in (0, 1]");
  if (n_units < 1) throw ModelError(ErrorCode::kInvalidInput, "need at least one unit");
  double exponent = 1.0 + std::log(learning) / std::log(2.0);
  return c_bus_musd * std::pow(static_cast<double>(n_units), exponent);
}

struct LaunchModel {
  double soyuz_cost_musd = 48.5;
  double soyuz_perf_slope = -934.4;  // perf = slope*ln(h) + intercept
  double soyuz_perf_intercept_kg = 11333.0;
  double falcon_cost_musd_per_kg = 0.025;
};

// Soyuz-class payload capability [kg] to circular altitude h.
inline double soyuz_performance_kg(double altitude_km, const LaunchModel& m = {}) {
  if (altitude_km <= 0) throw ModelError(ErrorCode::kInvalidInput, "altitude must be positive");
  double perf = m.soyuz_perf_slope * std::log(altitude_km) + m.soyuz_perf_intercept_kg;
  if (perf <= 0)
    throw ModelError(ErrorCode::kNoLaunchCapability,
                     "no launch capability at " + std::to_string(altitude_km) + " km");
  return perf;
}

struct LaunchPlan {
  int n_launches = 0;          // Soyuz launches, or flight units on the per-kg branch
  double cost_musd = 0;
  bool per_kg_branch = false;  // wet mass exceeded the Soyuz performance
  int sats_per_vehicle = 0;
};

// Minimum launches for full deployment over the horizon; one orbital plane
// per launch vehicle. Heavier-than-Soyuz satellites fall to per-kg pricing.
inline LaunchPlan launch_plan(double m_wet_kg, double altitude_km, int n_planes,
                              int sats_per_plane, int n_generations, double launch_discount = 0.0,
                              const LaunchModel& m = {}) {
  if (m_wet_kg <= 0) throw ModelError(ErrorCode::kInvalidInput, "wet mass must be positive");
  if (n_planes <= 0 || sats_per_plane <= 0 || n_generations <= 0)
    throw ModelError(ErrorCode::kInvalidInput, "counts must be positive");
  LaunchPlan plan;
  const double perf = soyuz_performance_kg(altitude_km, m);
  const int total_units = sats_per_plane * n_planes * n_generations;
  if (m_wet_kg <= perf) {
    plan.sats_per_vehicle = static_cast<int>(std::floor(perf / m_wet_kg));
    plan.n_launches = ((sats_per_plane + plan.sats_per_vehicle - 1) / plan.sats_per_vehicle) *
                      n_planes * n_generations;
    plan.cost_musd = m.soyuz_cost_musd * plan.n_launches * (1.0 - launch_discount);
  } else {
    plan.per_kg_branch = true;
    plan.n_launches = total_units;
    plan.cost_musd =
        m.falcon_cost_musd_per_kg * m_wet_kg * total_units * (1.0 - launch_discount);
  }
  return plan;
}

struct CostBreakdown {
  double production_musd = 0;
  double launch_musd = 0;
  double operations_musd = 0;
  double total_busd = 0;
  int n_flight_units = 0;
  int n_launches = 0;
  std::string bus_name;
  double unit_cost_musd = 0;
  bool bus_extrapolated = false;
  bool launch_per_kg = false;
};

inline CostBreakdown total_cost(double production_musd, double launch_musd,
                                double ops_rate_musd_per_sat_yr, int n_sats, int horizon_yr = 30) {
  if (production_musd < 0 || launch_musd < 0 || ops_rate_musd_per_sat_yr < 0 || n_sats < 0)
    throw ModelError(ErrorCode::kInvalidInput, "inputs must be >= 0");
  CostBreakdown out;
  out.production_musd = production_musd;
  out.launch_musd = launch_musd;
  out.operations_musd = ops_rate_musd_per_sat_yr * n_sats * horizon_yr;
  out.total_busd = (production_musd + launch_musd + out.operations_musd) / 1000.0;
  return out;
}

}  // namespace gnsstrade::cost
