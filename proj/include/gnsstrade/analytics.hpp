#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gnsstrade/error.hpp"
#include "gnsstrade/threading.hpp"
#include "gnsstrade/tradespace.hpp"

// Association rule mining over the feasible set, variance-based sensitivity
// indices, the model-parameter scenario sweep and the failure-robustness
// study.

namespace gnsstrade::analytics {

using tradespace::ArchitectureMetrics;
using tradespace::DecisionVector;
using tradespace::Scenario;

// ---------------------------------------------------------------------------
// Decisions as categorical features

enum class Decision {
  kAltitude = 0,
  kSatCount,
  kInclination,
  kPlaneCount,
  kRxPower,
  kFreqCount,
  kLifetime,
};

inline constexpr int kNumDecisions = 7;

inline const char* decision_name(Decision d) {
  switch (d) {
    case Decision::kAltitude: return "altitude_km";
    case Decision::kSatCount: return "n_sats";
    case Decision::kInclination: return "inclination_deg";
    case Decision::kPlaneCount: return "n_planes";
    case Decision::kRxPower: return "rx_power_dbw";
    case Decision::kFreqCount: return "n_freqs";
    case Decision::kLifetime: return "lifetime_yr";
  }
  return "unknown";
}

inline double decision_value(const DecisionVector& v, Decision d) {
  switch (d) {
    case Decision::kAltitude: return v.altitude_km;
    case Decision::kSatCount: return v.n_sats;
    case Decision::kInclination: return v.inclination_deg;
    case Decision::kPlaneCount: return v.n_planes;
    case Decision::kRxPower: return v.rx_power_dbw;
    case Decision::kFreqCount: return v.n_freqs;
    case Decision::kLifetime: return v.lifetime_yr;
  }
  return 0;
}

struct Literal {
  Decision decision;
  double value;
  bool matches(const DecisionVector& v) const { return decision_value(v, decision) == value; }
  bool operator<(const Literal& o) const {
    if (decision != o.decision) return decision < o.decision;
    return value < o.value;
  }
  bool operator==(const Literal& o) const = default;
};

// Conjunction of (decision, value) literals; order 1 or 2.
struct Feature {
  std::vector<Literal> literals;
  bool matches(const DecisionVector& v) const {
    for (const auto& l : literals)
      if (!l.matches(v)) return false;
    return true;
  }
  std::string describe() const {
    std::string s;
    for (const auto& l : literals) {
      if (!s.empty()) s += " & ";
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%s=%g", decision_name(l.decision), l.value);
      s += buf;
    }
    return s;
  }
};

struct Rule {
  Feature antecedent;
  std::string target_name;
  double support_x = 0;
  double support_y = 0;
  double support_xy = 0;
  double confidence_xy = 0;  // P(Y | X)
  double confidence_yx = 0;  // P(X | Y)
  double lift = 0;           // conf(X->Y) / supp(Y)
};

struct MiningOptions {
  double min_confidence = 0.9;  // on either direction
  double min_lift = 1.0;
  int max_order = 2;
};

// Apriori-style mining of driving features of target_set within population.
// Order-2 candidates are conjunctions of surviving order-1 features.
inline std::vector<Rule> mine_rules(const std::vector<DecisionVector>& population,
                                    const std::vector<bool>& target_set,
                                    const std::string& target_name,
                                    const MiningOptions& opt = {}) {
  if (population.size() != target_set.size())
    throw ModelError(ErrorCode::kInvalidInput, "population/target size mismatch");
  const double n = static_cast<double>(population.size());
  std::size_t target_count = 0;
  for (bool b : target_set) target_count += b ? 1 : 0;
  if (target_count == 0) throw ModelError(ErrorCode::kInvalidInput, "empty target set");
  const double supp_y = static_cast<double>(target_count) / n;

  auto score = [&](const Feature& f) {
    Rule r;
    r.antecedent = f;
    r.target_name = target_name;
    std::size_t cx = 0, cxy = 0;
    for (std::size_t i = 0; i < population.size(); ++i) {
      if (!f.matches(population[i])) continue;
      ++cx;
      if (target_set[i]) ++cxy;
    }
    r.support_x = static_cast<double>(cx) / n;
    r.support_y = supp_y;
    r.support_xy = static_cast<double>(cxy) / n;
    r.confidence_xy = cx > 0 ? r.support_xy / r.support_x : 0.0;
    r.confidence_yx = r.support_xy / supp_y;
    r.lift = r.confidence_xy / supp_y;
    return r;
  };
  auto survives = [&](const Rule& r) {
    return r.support_x > 0 && r.lift >= opt.min_lift &&
           std::max(r.confidence_xy, r.confidence_yx) >= opt.min_confidence;
  };

  // Order-1 candidates: every realized value of every decision.
  std::vector<Rule> rules;
  std::vector<Feature> surviving1;
  for (int d = 0; d < kNumDecisions; ++d) {
    std::set<double> values;
    for (const auto& v : population) values.insert(decision_value(v, static_cast<Decision>(d)));
    for (double val : values) {
      Feature f{{Literal{static_cast<Decision>(d), val}}};
      Rule r = score(f);
      if (survives(r)) {
        rules.push_back(r);
        surviving1.push_back(f);
      }
    }
  }

  if (opt.max_order >= 2) {
    for (std::size_t a = 0; a < surviving1.size(); ++a) {
      for (std::size_t b = a + 1; b < surviving1.size(); ++b) {
        const Literal& la = surviving1[a].literals[0];
        const Literal& lb = surviving1[b].literals[0];
        if (la.decision == lb.decision) continue;  // no repeated decision
        Feature f{{la, lb}};
        std::sort(f.literals.begin(), f.literals.end());
        Rule r = score(f);
        if (survives(r)) rules.push_back(r);
      }
    }
  }
  return rules;
}

// ---------------------------------------------------------------------------
// Sobol sensitivity on the enumerated feasible set

struct SobolIndex {
  double first_order = 0;
  double total_order = 0;
};

namespace detail {

inline double variance(const std::vector<double>& y) {
  const double n = static_cast<double>(y.size());
  double mean = pairwise_sum(y) / n;
  std::vector<double> sq(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) sq[i] = (y[i] - mean) * (y[i] - mean);
  return pairwise_sum(sq) / n;
}

}  // namespace detail

// Empirical first- and total-order indices by conditional-mean grouping over
// the realized (non-orthogonal) design.
inline SobolIndex sobol_indices(const std::vector<DecisionVector>& population,
                                const std::vector<double>& metric, Decision decision) {
  if (population.size() != metric.size())
    throw ModelError(ErrorCode::kInvalidInput, "population/metric size mismatch");
  if (population.size() < 2) throw ModelError(ErrorCode::kInvalidInput, "population too small");
  const double n = static_cast<double>(metric.size());
  double var_y = detail::variance(metric);
  if (var_y <= 0) throw ModelError(ErrorCode::kInvalidInput, "metric has zero variance");
  double mean_y = pairwise_sum(metric) / n;

  // First order: variance of E[Y | X_i] over the groups defined by X_i.
  std::map<double, std::pair<double, std::size_t>> groups;
  for (std::size_t i = 0; i < metric.size(); ++i) {
    auto& g = groups[decision_value(population[i], decision)];
    g.first += metric[i];
    g.second += 1;
  }
  double var_cond = 0;
  for (const auto& [value, g] : groups) {
    double gm = g.first / static_cast<double>(g.second);
    var_cond += static_cast<double>(g.second) / n * (gm - mean_y) * (gm - mean_y);
  }

  // Total order: 1 - Var(E[Y | X_{-i}]) / Var(Y), grouping on the joint key
  // of all other decisions.
  std::map<std::array<double, kNumDecisions - 1>, std::pair<double, std::size_t>> rest;
  for (std::size_t i = 0; i < metric.size(); ++i) {
    std::array<double, kNumDecisions - 1> key{};
    int k = 0;
    for (int d = 0; d < kNumDecisions; ++d) {
      if (static_cast<Decision>(d) == decision) continue;
      key[static_cast<std::size_t>(k++)] = decision_value(population[i], static_cast<Decision>(d));
    }
    auto& g = rest[key];
    g.first += metric[i];
    g.second += 1;
  }
  double var_rest = 0;
  for (const auto& [key, g] : rest) {
    double gm = g.first / static_cast<double>(g.second);
    var_rest += static_cast<double>(g.second) / n * (gm - mean_y) * (gm - mean_y);
  }

  SobolIndex idx;
  idx.first_order = var_cond / var_y;
  idx.total_order = 1.0 - var_rest / var_y;
  return idx;
}

// ---------------------------------------------------------------------------
// Scenario sweep

struct ScenarioGrid {
  std::vector<double> learning{0.85, 0.90};
  std::vector<double> dry_mass_delta{-0.40, -0.20, 0.0, 0.20, 0.40};
  std::vector<sizing::EolStrategy> eol{sizing::EolStrategy::kBusinessAsUsual,
                                       sizing::EolStrategy::kDeorbitSubsystem};
  std::vector<double> launch_discount{0.80, 0.40, 0.0};
  std::vector<double> t_wait_min{1, 5, 10};
  std::vector<double> ops_rate{0, 2, 4};
};

inline std::vector<Scenario> enumerate_scenarios(const ScenarioGrid& grid = {}) {
  std::vector<Scenario> out;
  for (double lf : grid.learning)
    for (double dm : grid.dry_mass_delta)
      for (auto eol : grid.eol)
        for (double ld : grid.launch_discount)
          for (double tw : grid.t_wait_min)
            for (double ops : grid.ops_rate) {
              Scenario s;
              s.learning = lf;
              s.dry_mass_delta = dm;
              s.eol = eol;
              s.launch_discount = ld;
              s.t_wait_min = tw;
              s.ops_rate_musd_sat_yr = ops;
              out.push_back(s);
            }
  return out;
}

struct ScenarioSweepResult {
  std::vector<Scenario> scenarios;
  // per architecture: share of scenarios where it is rank 1
  std::vector<double> non_dominated_share;
  // per scenario: rank of each architecture
  std::vector<std::vector<int>> ranks;
  // fuzzy-front regime shares, keyed by (scenario index, regime)
  std::vector<std::array<double, 4>> fuzzy_regime_share;
  // per reference: share of scenarios where some feasible member dominates it
  std::vector<double> reference_dominated_share;
};

// Re-evaluates cost (and UERE through t_wait) for every scenario, reusing the
// scenario-invariant GDOP fields, and recomputes Pareto ranks per scenario.
// Reference architectures, when given, are checked for domination against
// the population in every scenario.
inline ScenarioSweepResult scenario_sweep(
    const std::vector<DecisionVector>& feasible, geometry::GdopCache& gdop_cache,
    const tradespace::EvaluationModel& model, const std::vector<Scenario>& scenarios,
    unsigned n_threads = std::thread::hardware_concurrency(),
    const std::vector<DecisionVector>& references = {}) {
  ScenarioSweepResult result;
  result.scenarios = scenarios;
  result.ranks.resize(scenarios.size());
  result.fuzzy_regime_share.resize(scenarios.size());
  result.non_dominated_share.assign(feasible.size(), 0.0);
  std::vector<std::vector<bool>> ref_dominated(scenarios.size(),
                                               std::vector<bool>(references.size(), false));

  // GDOP fields are scenario invariant; prefetch them sequentially so the
  // sweep itself is pure arithmetic.
  for (const auto& v : feasible)
    gdop_cache.get(v.altitude_km, v.n_sats, v.inclination_deg, v.n_planes);
  for (const auto& v : references)
    gdop_cache.get(v.altitude_km, v.n_sats, v.inclination_deg, v.n_planes);

  parallel_for(scenarios.size(), n_threads, [&](std::size_t is) {
    const Scenario& sc = scenarios[is];
    std::vector<double> nav(feasible.size()), cost(feasible.size());
    for (std::size_t i = 0; i < feasible.size(); ++i) {
      ArchitectureMetrics m = tradespace::evaluate(feasible[i], sc, gdop_cache, model);
      nav[i] = m.nav_error_m;
      cost[i] = m.total_cost_busd;
    }
    result.ranks[is] = tradespace::pareto_rank(nav, cost);

    auto fuzzy = tradespace::fuzzy_front(result.ranks[is], 2);
    std::array<double, 4> share{};
    for (std::size_t idx : fuzzy)
      share[static_cast<std::size_t>(tradespace::orbit_regime(feasible[idx].altitude_km))] += 1.0;
    if (!fuzzy.empty())
      for (auto& s : share) s /= static_cast<double>(fuzzy.size());
    result.fuzzy_regime_share[is] = share;

    for (std::size_t r = 0; r < references.size(); ++r) {
      ArchitectureMetrics ref = tradespace::evaluate(references[r], sc, gdop_cache, model, true);
      for (std::size_t i = 0; i < feasible.size(); ++i) {
        bool leq = nav[i] <= ref.nav_error_m && cost[i] <= ref.total_cost_busd;
        bool strict = nav[i] < ref.nav_error_m || cost[i] < ref.total_cost_busd;
        if (leq && strict) {
          ref_dominated[is][r] = true;
          break;
        }
      }
    }
  });

  for (std::size_t is = 0; is < scenarios.size(); ++is)
    for (std::size_t i = 0; i < feasible.size(); ++i)
      if (result.ranks[is][i] == 1) result.non_dominated_share[i] += 1.0;
  for (auto& s : result.non_dominated_share) s /= static_cast<double>(scenarios.size());

  result.reference_dominated_share.assign(references.size(), 0.0);
  for (std::size_t is = 0; is < scenarios.size(); ++is)
    for (std::size_t r = 0; r < references.size(); ++r)
      if (ref_dominated[is][r]) result.reference_dominated_share[r] += 1.0;
  for (auto& s : result.reference_dominated_share) s /= static_cast<double>(scenarios.size());
  return result;
}

// ---------------------------------------------------------------------------
// Failure robustness study

struct FailureStudyEntry {
  DecisionVector architecture;
  geometry::FailureStats stats;
  std::map<int, double> intact_latitude_profile;  // worst per-point avg by latitude bin
  std::map<int, double> failed_latitude_profile;  // profile of the worst trial
};

inline FailureStudyEntry failure_study_one(const DecisionVector& v,
                                           const geometry::UserGrid& grid,
                                           const geometry::GdopCache::Params& params,
                                           int n_trials, std::uint64_t seed) {
  FailureStudyEntry entry;
  entry.architecture = v;
  orbits::WalkerDelta cfg{{v.altitude_km, v.inclination_deg}, v.n_sats, v.n_planes,
                          std::min(params.phasing_f, v.n_planes - 1)};
  auto eph = orbits::propagate(cfg, params.duration_s, params.prop_step_deg * params.dop_step_multiplier);
  geometry::GeometryOptions opt;
  opt.mask_deg = params.mask_deg;
  opt.n_threads = params.n_threads;
  auto intact = geometry::gdop_worst_site(eph, grid, opt);
  entry.intact_latitude_profile = intact.per_latitude_worst;
  entry.stats = geometry::failure_gdop_delta(cfg, eph, grid, n_trials, seed, opt);

  // Latitude profile of the worst observed single failure.
  int worst_sat = -1;
  double worst_delta = -1;
  for (const auto& t : entry.stats.trials)
    if (!t.coverage_broken && t.worst_site_delta > worst_delta) {
      worst_delta = t.worst_site_delta;
      worst_sat = t.removed_sat;
    }
  if (worst_sat >= 0) {
    auto degraded = geometry::remove_satellite(eph, worst_sat);
    auto failed = geometry::gdop_worst_site(degraded, grid, opt);
    entry.failed_latitude_profile = failed.per_latitude_worst;
  }
  return entry;
}

}  // namespace gnsstrade::analytics
