#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gnsstrade/analytics.hpp"
#include "gnsstrade/config.hpp"
#include "gnsstrade/tradespace.hpp"

// End-to-end orchestration: enumerate -> constrain -> evaluate -> rank ->
// mine -> sobol -> scenarios, with per-stage rejection bookkeeping.

namespace gnsstrade::pipeline {

using tradespace::ArchitectureMetrics;
using tradespace::DecisionVector;
using tradespace::RejectReason;
using tradespace::Scenario;

struct ReferenceArchitecture {
  std::string name;
  DecisionVector decisions;
};

inline std::vector<ReferenceArchitecture> reference_architectures() {
  return {{"GPS", {20188, 24, 56, 6, -155, 3, 15}},
          {"GAL", {23229, 27, 56, 3, -155, 3, 15}}};
}

struct StageCounts {
  std::size_t enumerated = 0;
  std::size_t rejected_divisibility = 0;
  std::size_t rejected_regime = 0;
  std::size_t rejected_coverage = 0;
  std::size_t rejected_gdop = 0;
  std::size_t rejected_cost = 0;
  std::size_t feasible = 0;
};

struct RuleSet {
  std::string population_name;
  std::vector<analytics::Rule> rules;
};

struct SobolRow {
  std::string metric;
  analytics::Decision decision;
  analytics::SobolIndex index;
};

struct RunResult {
  StageCounts counts;
  std::vector<ArchitectureMetrics> all;        // every enumerated vector with reject reason
  std::vector<std::size_t> feasible_indices;   // indices into all
  std::vector<ArchitectureMetrics> references; // evaluated reference rows
  std::vector<int> reference_ranks;            // rank each reference would hold
  std::vector<RuleSet> rules;
  std::vector<SobolRow> sobol;
  analytics::ScenarioSweepResult sweep;
  std::vector<analytics::FailureStudyEntry> failure_study;
  std::size_t gdop_cache_size = 0;
};

enum class Stage {
  kEnumerate = 0,
  kConstrain,
  kEvaluate,
  kRank,
  kMine,
  kSobol,
  kScenarios,
  kFailure,
};

inline Stage stage_from_name(const std::string& s) {
  if (s == "enumerate") return Stage::kEnumerate;
  if (s == "constrain") return Stage::kConstrain;
  if (s == "evaluate") return Stage::kEvaluate;
  if (s == "rank") return Stage::kRank;
  if (s == "mine") return Stage::kMine;
  if (s == "sobol") return Stage::kSobol;
  if (s == "scenarios") return Stage::kScenarios;
  if (s == "failure") return Stage::kFailure;
  if (s == "all") return Stage::kFailure;
  throw ModelError(ErrorCode::kInvalidInput, "unknown stage '" + s + "'");
}

// Regime features (LEO / Low MEO / MEO / High MEO) participate in rule mining
// alongside the raw decisions; they are expressed through the altitude
// decision by scoring manually.
struct RegimeRule {
  tradespace::OrbitRegime regime;
  std::string population_name;
  double support_x = 0, support_y = 0, support_xy = 0;
  double confidence_xy = 0, confidence_yx = 0, lift = 0;
};

inline RegimeRule score_regime_rule(const std::vector<DecisionVector>& population,
                                    const std::vector<bool>& target,
                                    tradespace::OrbitRegime regime, const std::string& name) {
  RegimeRule r;
  r.regime = regime;
  r.population_name = name;
  const double n = static_cast<double>(population.size());
  std::size_t cx = 0, cy = 0, cxy = 0;
  for (std::size_t i = 0; i < population.size(); ++i) {
    bool in_x = tradespace::orbit_regime(population[i].altitude_km) == regime;
    if (in_x) ++cx;
    if (target[i]) ++cy;
    if (in_x && target[i]) ++cxy;
  }
  r.support_x = cx / n;
  r.support_y = cy / n;
  r.support_xy = cxy / n;
  r.confidence_xy = cx > 0 ? r.support_xy / r.support_x : 0.0;
  r.confidence_yx = cy > 0 ? r.support_xy / r.support_y : 0.0;
  r.lift = r.support_y > 0 ? r.confidence_xy / r.support_y : 0.0;
  return r;
}

class Runner {
 public:
  explicit Runner(config::RunConfig cfg)
      : cfg_(std::move(cfg)),
        grid_(geometry::build_grid(cfg_.grid_points)),
        cache_(grid_, cfg_.gdop_params()) {}

  const config::RunConfig& config() const { return cfg_; }
  geometry::GdopCache& gdop_cache() { return cache_; }

  RunResult run(Stage last_stage = Stage::kFailure) {
    RunResult res;
    Scenario baseline;

    auto vectors = tradespace::enumerate_full_factorial(cfg_.options);
    res.counts.enumerated = vectors.size();
    if (last_stage == Stage::kEnumerate) {
      for (const auto& v : vectors) {
        ArchitectureMetrics m;
        m.decisions = v;
        res.all.push_back(m);
      }
      return res;
    }

    // Stage 1+2: cheap categorical filters.
    res.all.reserve(vectors.size());
    for (const auto& v : vectors) {
      ArchitectureMetrics m;
      m.decisions = v;
      m.reject = tradespace::categorical_reject(v, cfg_.model.constraints);
      if (m.reject == RejectReason::kDivisibility) ++res.counts.rejected_divisibility;
      if (m.reject == RejectReason::kRegimeRules) ++res.counts.rejected_regime;
      res.all.push_back(m);
    }
    if (last_stage == Stage::kConstrain) return res;

    // Stage 3+4 (coverage, GDOP gate) and metric evaluation. The geometry
    // cache key has far fewer distinct values than the candidate list, so the
    // unique keys are evaluated first, in parallel.
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < res.all.size(); ++i)
      if (res.all[i].reject == RejectReason::kNone) candidates.push_back(i);

    std::vector<geometry::GdopCache::Key> keys;
    for (std::size_t i : candidates) {
      const auto& v = res.all[i].decisions;
      keys.emplace_back(v.altitude_km, v.n_sats, v.inclination_deg, v.n_planes);
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    // One field at a time; the grid-point loop inside is already parallel.
    for (const auto& k : keys)
      cache_.get(std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k));

    for (std::size_t i : candidates) {
      ArchitectureMetrics& m = res.all[i];
      m = tradespace::evaluate(m.decisions, baseline, cache_, cfg_.model);
      if (m.reject == RejectReason::kCoverage) ++res.counts.rejected_coverage;
      if (m.reject == RejectReason::kGdopGate) ++res.counts.rejected_gdop;
      if (m.reject == RejectReason::kNone &&
          m.total_cost_busd > cfg_.model.constraints.cost_cap_busd) {
        m.reject = RejectReason::kCostCap;
        ++res.counts.rejected_cost;
      }
      if (m.reject == RejectReason::kNone) res.feasible_indices.push_back(i);
    }
    res.counts.feasible = res.feasible_indices.size();

    for (const auto& ref : reference_architectures()) {
      ArchitectureMetrics m =
          tradespace::evaluate(ref.decisions, baseline, cache_, cfg_.model, true);
      m.reference_name = ref.name;
      res.references.push_back(m);
    }
    res.gdop_cache_size = cache_.size();
    if (last_stage == Stage::kEvaluate) return res;

    // Pareto ranking over the feasible set.
    std::vector<double> nav, cost;
    for (std::size_t i : res.feasible_indices) {
      nav.push_back(res.all[i].nav_error_m);
      cost.push_back(res.all[i].total_cost_busd);
    }
    auto ranks = tradespace::pareto_rank(nav, cost);
    for (std::size_t k = 0; k < ranks.size(); ++k)
      res.all[res.feasible_indices[k]].pareto_rank = ranks[k];

    // Rank each reference within (population + reference).
    for (auto& ref : res.references) {
      std::vector<double> nav2 = nav, cost2 = cost;
      nav2.push_back(ref.nav_error_m);
      cost2.push_back(ref.total_cost_busd);
      auto r2 = tradespace::pareto_rank(nav2, cost2);
      ref.pareto_rank = r2.back();
      res.reference_ranks.push_back(r2.back());
    }
    if (last_stage == Stage::kRank) return res;

    // Rule mining on three target definitions.
    res.rules.push_back(mine_population(res, "all", [](const ArchitectureMetrics&) { return true; }));
    res.rules.push_back(mine_population(res, "high_power", [](const ArchitectureMetrics& m) {
      return m.decisions.rx_power_dbw == -145;
    }));
    res.rules.push_back(mine_population(res, "affordable", [](const ArchitectureMetrics& m) {
      return m.total_cost_busd < 6.0;
    }));
    if (last_stage == Stage::kMine) return res;

    // Sobol indices for both metrics over the feasible set.
    {
      std::vector<DecisionVector> pop;
      for (std::size_t i : res.feasible_indices) pop.push_back(res.all[i].decisions);
      for (const char* metric : {"nav_error_m", "total_cost_busd"}) {
        std::vector<double> y;
        for (std::size_t i : res.feasible_indices)
          y.push_back(std::string(metric) == "nav_error_m" ? res.all[i].nav_error_m
                                                           : res.all[i].total_cost_busd);
        for (int d = 0; d < analytics::kNumDecisions; ++d) {
          SobolRow row;
          row.metric = metric;
          row.decision = static_cast<analytics::Decision>(d);
          row.index = analytics::sobol_indices(pop, y, row.decision);
          res.sobol.push_back(row);
        }
      }
    }
    if (last_stage == Stage::kSobol) return res;

    // Scenario sweep.
    {
      std::vector<DecisionVector> pop;
      for (std::size_t i : res.feasible_indices) pop.push_back(res.all[i].decisions);
      std::vector<DecisionVector> refs;
      for (const auto& ref : reference_architectures()) refs.push_back(ref.decisions);
      auto scenarios = analytics::enumerate_scenarios(cfg_.scenario_grid);
      res.sweep =
          analytics::scenario_sweep(pop, cache_, cfg_.model, scenarios, cfg_.n_threads, refs);
    }
    if (last_stage == Stage::kScenarios) return res;

    // Failure robustness study on representative architectures.
    {
      std::vector<DecisionVector> reps = {{20188, 24, 56, 6, -155, 3, 15},
                                          {12525, 84, 64, 6, -155, 3, 15}};
      for (const auto& v : reps)
        res.failure_study.push_back(analytics::failure_study_one(
            v, grid_, cfg_.gdop_params(), cfg_.failure_trials, cfg_.seed));
    }
    return res;
  }

  // Population = feasible subset satisfying `member`; target = its rank-1
  // front (re-ranked within the subset). Regime rules are scored alongside.
  template <typename Pred>
  RuleSet mine_population(const RunResult& res, const std::string& name, Pred member) {
    std::vector<DecisionVector> pop;
    std::vector<double> nav, cost;
    for (std::size_t i : res.feasible_indices) {
      const auto& m = res.all[i];
      if (!member(m)) continue;
      pop.push_back(m.decisions);
      nav.push_back(m.nav_error_m);
      cost.push_back(m.total_cost_busd);
    }
    RuleSet set;
    set.population_name = name;
    if (pop.size() < 2) return set;
    auto ranks = tradespace::pareto_rank(nav, cost);
    std::vector<bool> target(pop.size(), false);
    for (std::size_t i = 0; i < pop.size(); ++i) target[i] = (ranks[i] == 1);
    analytics::MiningOptions opt;
    set.rules = analytics::mine_rules(pop, target, name + "/pareto_front", opt);
    regime_rules_.erase(name);
    for (auto regime :
         {tradespace::OrbitRegime::kLeo, tradespace::OrbitRegime::kLowMeo,
          tradespace::OrbitRegime::kMeo, tradespace::OrbitRegime::kHighMeo})
      regime_rules_[name].push_back(score_regime_rule(pop, target, regime, name));
    return set;
  }

  const std::map<std::string, std::vector<RegimeRule>>& regime_rules() const {
    return regime_rules_;
  }
  const geometry::UserGrid& grid() const { return grid_; }

 private:
  config::RunConfig cfg_;
  geometry::UserGrid grid_;
  geometry::GdopCache cache_;
  std::map<std::string, std::vector<RegimeRule>> regime_rules_;
};

}  // namespace gnsstrade::pipeline
