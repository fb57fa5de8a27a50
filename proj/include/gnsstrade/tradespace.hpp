#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gnsstrade/constants.hpp"
#include "gnsstrade/cost.hpp"
#include "gnsstrade/error.hpp"
#include "gnsstrade/geometry.hpp"
#include "gnsstrade/signal.hpp"
#include "gnsstrade/sizing.hpp"

// Full-factorial enumeration, feasibility filtering, the per-architecture
// evaluation pipeline, and Pareto ranking on (navigation error, total cost).

namespace gnsstrade::tradespace {

struct DecisionVector {
  double altitude_km = 20188;
  int n_sats = 24;
  double inclination_deg = 56;
  int n_planes = 6;
  double rx_power_dbw = -155;
  int n_freqs = 3;
  int lifetime_yr = 15;

  bool operator==(const DecisionVector&) const = default;
};

struct DecisionOptions {
  std::vector<double> altitudes_km{constants::kAltitudeOptionsKm.begin(),
                                   constants::kAltitudeOptionsKm.end()};
  std::vector<int> sat_counts{constants::kSatCountOptions.begin(),
                              constants::kSatCountOptions.end()};
  std::vector<double> inclinations_deg{constants::kInclinationOptionsDeg.begin(),
                                       constants::kInclinationOptionsDeg.end()};
  std::vector<int> plane_counts{constants::kPlaneCountOptions.begin(),
                                constants::kPlaneCountOptions.end()};
  std::vector<double> rx_powers_dbw{constants::kRxPowerOptionsDbw.begin(),
                                    constants::kRxPowerOptionsDbw.end()};
  std::vector<int> freq_counts{constants::kFreqCountOptions.begin(),
                               constants::kFreqCountOptions.end()};
  std::vector<int> lifetimes_yr{constants::kLifetimeOptionsYr.begin(),
                                constants::kLifetimeOptionsYr.end()};
};

// Cartesian product in deterministic lexicographic order (altitude outermost).
inline std::vector<DecisionVector> enumerate_full_factorial(const DecisionOptions& opt = {}) {
  if (opt.altitudes_km.empty() || opt.sat_counts.empty() || opt.inclinations_deg.empty() ||
      opt.plane_counts.empty() || opt.rx_powers_dbw.empty() || opt.freq_counts.empty() ||
      opt.lifetimes_yr.empty())
    throw ModelError(ErrorCode::kInvalidInput, "every decision needs at least one option");
  std::vector<DecisionVector> out;
  out.reserve(opt.altitudes_km.size() * opt.sat_counts.size() * opt.inclinations_deg.size() *
              opt.plane_counts.size() * opt.rx_powers_dbw.size() * opt.freq_counts.size() *
              opt.lifetimes_yr.size());
  for (double h : opt.altitudes_km)
    for (int n : opt.sat_counts)
      for (double inc : opt.inclinations_deg)
        for (int p : opt.plane_counts)
          for (double pw : opt.rx_powers_dbw)
            for (int f : opt.freq_counts)
              for (int life : opt.lifetimes_yr)
                out.push_back({h, n, inc, p, pw, f, life});
  return out;
}

enum class RejectReason {
  kNone = 0,
  kDivisibility,
  kRegimeRules,
  kCoverage,
  kGdopGate,
  kCostCap,
};

inline const char* reject_reason_name(RejectReason r) {
  switch (r) {
    case RejectReason::kNone: return "feasible";
    case RejectReason::kDivisibility: return "divisibility";
    case RejectReason::kRegimeRules: return "regime_rules";
    case RejectReason::kCoverage: return "coverage";
    case RejectReason::kGdopGate: return "gdop_gate";
    case RejectReason::kCostCap: return "cost_cap";
  }
  return "unknown";
}

struct ConstraintPolicy {
  double polar_inclination_deg = 87;
  int leo_min_sats = 360;
  std::vector<int> leo_planes{24, 30};
  std::vector<double> meo_inclinations{56, 64};
  int meo_max_sats = 84;
  std::vector<int> meo_planes{3, 4, 5, 6};
  double gdop_gate = 6.0;
  double cost_cap_busd = 60.0;
};

// Cheap categorical stages (divisibility, orbit-regime rules). Coverage, the
// GDOP gate and the cost cap are applied by the pipeline where the needed
// quantities exist.
inline RejectReason categorical_reject(const DecisionVector& v, const ConstraintPolicy& p = {}) {
  if (v.n_sats % v.n_planes != 0) return RejectReason::kDivisibility;
  auto contains = [](const std::vector<int>& xs, int x) {
    return std::find(xs.begin(), xs.end(), x) != xs.end();
  };
  auto contains_d = [](const std::vector<double>& xs, double x) {
    return std::find(xs.begin(), xs.end(), x) != xs.end();
  };
  if (sizing::is_leo(v.altitude_km)) {
    if (v.inclination_deg != p.polar_inclination_deg || v.n_sats < p.leo_min_sats ||
        !contains(p.leo_planes, v.n_planes))
      return RejectReason::kRegimeRules;
  } else {
    if (!contains_d(p.meo_inclinations, v.inclination_deg) || v.n_sats > p.meo_max_sats ||
        !contains(p.meo_planes, v.n_planes))
      return RejectReason::kRegimeRules;
  }
  return RejectReason::kNone;
}

// One scenario of the robustness sweep; defaults are the baseline case.
struct Scenario {
  double learning = 0.85;
  double dry_mass_delta = 0.0;
  sizing::EolStrategy eol = sizing::EolStrategy::kBusinessAsUsual;
  double launch_discount = 0.0;  // fraction of launch cost removed
  double t_wait_min = 1.0;
  double ops_rate_musd_sat_yr = 0.0;

  bool operator==(const Scenario&) const = default;
};

struct ArchitectureMetrics {
  DecisionVector decisions;
  double nav_error_m = 0;
  double total_cost_busd = 0;
  double sc_power_w = 0;
  double dry_mass_kg = 0;
  double wet_mass_kg = 0;
  double unit_cost_musd = 0;
  double launch_cost_musd = 0;
  double gdop_worst = 0;
  double uere_m = 0;
  double decorr_time_min = 0;
  double production_musd = 0;
  double operations_musd = 0;
  int n_flight_units = 0;
  int n_launches = 0;
  std::string bus_name;
  bool bus_extrapolated = false;
  bool launch_per_kg = false;
  double coverage_fraction = 1.0;
  RejectReason reject = RejectReason::kNone;
  int pareto_rank = 0;  // 0 = unranked
  bool is_reference = false;
  std::string reference_name;
};

struct EvaluationModel {
  signal::UereModel uere;
  sizing::SizingModel sizing;
  std::vector<cost::BusCatalogEntry> bus_catalog = cost::default_bus_catalog();
  cost::LaunchModel launch;
  int horizon_yr = 30;
  ConstraintPolicy constraints;
};

// Full metric evaluation for a categorically feasible decision vector.
// Coverage/GDOP gates are recorded in the reject field; metrics that need a
// feasible geometry are left at zero when the gate fails.
inline ArchitectureMetrics evaluate(const DecisionVector& v, const Scenario& sc,
                                    geometry::GdopCache& gdop_cache,
                                    const EvaluationModel& model = {}, bool is_reference = false) {
  ArchitectureMetrics m;
  m.decisions = v;
  m.is_reference = is_reference;

  auto field = gdop_cache.get(v.altitude_km, v.n_sats, v.inclination_deg, v.n_planes);
  m.coverage_fraction = field->coverage_fraction;
  if (!field->feasible) {
    m.reject = RejectReason::kCoverage;
    return m;
  }
  m.gdop_worst = field->worst_site;
  if (m.gdop_worst > model.constraints.gdop_gate) {
    m.reject = RejectReason::kGdopGate;
    return m;
  }

  signal::SignalConfig sig{v.rx_power_dbw, v.n_freqs, sc.t_wait_min};
  signal::UereBudget budget = signal::uere(sig, v.altitude_km, model.uere);
  m.uere_m = budget.total_rms_m;
  m.decorr_time_min =
      signal::decorrelation_time_min(geometry::median_elevation_rate_mdegs(v.altitude_km));
  m.nav_error_m = signal::une_m(m.uere_m, m.gdop_worst);

  sizing::SizingInputs sin;
  sin.altitude_km = v.altitude_km;
  sin.inclination_deg = v.inclination_deg;
  sin.rx_power_dbw = v.rx_power_dbw;
  sin.n_freqs = v.n_freqs;
  sin.lifetime_yr = v.lifetime_yr;
  sin.eol = sc.eol;
  sin.dry_mass_delta = sc.dry_mass_delta;
  sin.is_reference = is_reference;
  sizing::SizingReport rep = sizing::size_satellite(sin, model.sizing);
  m.sc_power_w = rep.power.p_spacecraft_w;
  m.dry_mass_kg = rep.m_dry_kg;
  m.wet_mass_kg = rep.m_wet_kg;

  cost::BusSelection bus = cost::select_bus(m.dry_mass_kg, model.bus_catalog);
  m.bus_name = bus.bus.name;
  m.unit_cost_musd = bus.bus.unit_cost_musd;
  m.bus_extrapolated = bus.extrapolated;
  m.n_flight_units = cost::flight_units(v.n_sats, v.lifetime_yr, model.horizon_yr);
  m.production_musd = cost::production_cost_musd(m.unit_cost_musd, m.n_flight_units, sc.learning);

  int generations = model.horizon_yr / v.lifetime_yr;
  cost::LaunchPlan launch =
      cost::launch_plan(m.wet_mass_kg, v.altitude_km, v.n_planes, v.n_sats / v.n_planes,
                        generations, sc.launch_discount, model.launch);
  m.launch_cost_musd = launch.cost_musd;
  m.n_launches = launch.n_launches;
  m.launch_per_kg = launch.per_kg_branch;

  cost::CostBreakdown total = cost::total_cost(m.production_musd, m.launch_cost_musd,
                                               sc.ops_rate_musd_sat_yr, v.n_sats, model.horizon_yr);
  m.operations_musd = total.operations_musd;
  m.total_cost_busd = total.total_busd;
  return m;
}

// Min-max normalization of one objective column.
inline std::vector<double> normalize(const std::vector<double>& values) {
  if (values.size() < 2)
    throw ModelError(ErrorCode::kInvalidInput, "normalization needs a population of >= 2");
  auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  std::vector<double> out(values.size(), 0.0);
  double span = *mx - *mn;
  if (span <= 0) return out;  // degenerate spread -> all-zero column
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - *mn) / span;
  return out;
}

// Iterative non-dominated sorting on two minimized objectives. Exactly equal
// objective pairs share a rank. O(n log n) sweep; see the brute-force oracle
// in the tests for the semantics.
inline std::vector<int> pareto_rank(const std::vector<double>& obj1,
                                    const std::vector<double>& obj2) {
  const std::size_t n = obj1.size();
  if (obj2.size() != n) throw ModelError(ErrorCode::kInvalidInput, "objective size mismatch");
  std::vector<int> rank(n, 0);
  if (n == 0) return rank;

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (obj1[a] != obj1[b]) return obj1[a] < obj1[b];
    return obj2[a] < obj2[b];
  });

  // fronts_min2[f]: the smallest obj2 seen in front f among processed points
  // (all of which have obj1 <= current). A point is dominated by front f iff
  // fronts_min2[f] <= its obj2, except for exact duplicates, which share the
  // rank of their first occurrence.
  std::vector<double> fronts_min2;
  std::map<std::pair<double, double>, int> duplicate_rank;
  for (std::size_t idx : order) {
    auto key = std::make_pair(obj1[idx], obj2[idx]);
    auto dup = duplicate_rank.find(key);
    if (dup != duplicate_rank.end()) {
      rank[idx] = dup->second;
      continue;
    }
    double y = obj2[idx];
    auto it = std::upper_bound(fronts_min2.begin(), fronts_min2.end(), y,
                               [](double value, double front_min) { return value < front_min; });
    std::size_t f = static_cast<std::size_t>(it - fronts_min2.begin());
    if (f == fronts_min2.size())
      fronts_min2.push_back(y);
    else
      fronts_min2[f] = y;
    rank[idx] = static_cast<int>(f) + 1;
    duplicate_rank.emplace(key, rank[idx]);
  }
  return rank;
}

// Architectures with Pareto rank at most k (the fuzzy front).
inline std::vector<std::size_t> fuzzy_front(const std::vector<int>& ranks, int k = 2) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ranks.size(); ++i)
    if (ranks[i] >= 1 && ranks[i] <= k) out.push_back(i);
  return out;
}

enum class OrbitRegime { kLeo, kLowMeo, kMeo, kHighMeo };

inline OrbitRegime orbit_regime(double altitude_km) {
  if (altitude_km <= 1250) return OrbitRegime::kLeo;
  if (altitude_km <= 12525) return OrbitRegime::kLowMeo;
  if (altitude_km <= 23229) return OrbitRegime::kMeo;
  return OrbitRegime::kHighMeo;
}

inline const char* orbit_regime_name(OrbitRegime r) {
  switch (r) {
    case OrbitRegime::kLeo: return "LEO";
    case OrbitRegime::kLowMeo: return "Low MEO";
    case OrbitRegime::kMeo: return "MEO";
    case OrbitRegime::kHighMeo: return "High MEO";
  }
  return "unknown";
}

}  // namespace gnsstrade::tradespace
