// Command-line front end: runs the tradespace pipeline from a JSON config and
// persists the result set, analysis tables and plot files.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gnsstrade/io.hpp"
#include "gnsstrade/pipeline.hpp"

namespace fs = std::filesystem;
using namespace gnsstrade;

namespace {

int run_pipeline(const config::RunConfig& cfg, const std::string& stage_name,
                 const std::vector<std::string>& plot_kinds) {
  pipeline::Stage last = pipeline::stage_from_name(stage_name);
  pipeline::Runner runner(cfg);
  pipeline::RunResult res = runner.run(last);

  std::printf("enumerated: %zu\n", res.counts.enumerated);
  if (last == pipeline::Stage::kEnumerate) return 0;
  std::printf("rejected (divisibility): %zu\n", res.counts.rejected_divisibility);
  std::printf("rejected (regime rules): %zu\n", res.counts.rejected_regime);
  if (last >= pipeline::Stage::kEvaluate) {
    std::printf("rejected (coverage):     %zu\n", res.counts.rejected_coverage);
    std::printf("rejected (GDOP gate):    %zu\n", res.counts.rejected_gdop);
    std::printf("rejected (cost cap):     %zu\n", res.counts.rejected_cost);
    std::printf("feasible:                %zu\n", res.counts.feasible);
    std::printf("unique geometries:       %zu\n", res.gdop_cache_size);
  }

  fs::create_directories(cfg.out_dir);
  fs::path out(cfg.out_dir);
  io::write_manifest(out / "run-manifest.json", cfg, res);
  if (last < pipeline::Stage::kEvaluate) return 0;

  io::write_architectures_csv(out / "architectures.csv", res);
  io::write_rejections_csv(out / "rejections.csv", res);
  if (last >= pipeline::Stage::kRank) {
    io::write_pareto_json(out / "pareto.json", res);
    std::size_t front = 0;
    for (std::size_t i : res.feasible_indices)
      if (res.all[i].pareto_rank == 1) ++front;
    std::printf("pareto front size:       %zu\n", front);
    for (const auto& ref : res.references)
      std::printf("reference %s: nav=%.3f m cost=%.3f $B rank=%d\n", ref.reference_name.c_str(),
                  ref.nav_error_m, ref.total_cost_busd, ref.pareto_rank);
  }
  if (last >= pipeline::Stage::kMine)
    io::write_rules_json(out / "rules.json", res, runner.regime_rules());
  if (last >= pipeline::Stage::kSobol) io::write_sobol_json(out / "sobol.json", res);
  if (last >= pipeline::Stage::kScenarios) {
    io::write_scenarios_csv(out / "scenarios.csv", res);
    std::printf("scenarios evaluated:     %zu\n", res.sweep.scenarios.size());
  }

  for (const auto& kind : plot_kinds) {
    if (kind == "tradespace") {
      io::write_tradespace_svg(out / "tradespace.svg", res);
    } else if (kind == "gdop-latitude") {
      std::vector<std::pair<std::string, std::map<int, double>>> profiles;
      for (const auto& ref : pipeline::reference_architectures()) {
        auto field = runner.gdop_cache().get(ref.decisions.altitude_km, ref.decisions.n_sats,
                                             ref.decisions.inclination_deg, ref.decisions.n_planes);
        profiles.emplace_back(ref.name, field->per_latitude_worst);
      }
      io::write_gdop_latitude_svg(out / "gdop_latitude.svg", profiles);
    } else if (kind == "failure") {
      if (res.failure_study.empty()) {
        std::fprintf(stderr, "failure plot requires the failure stage\n");
        return 2;
      }
      io::write_failure_svg(out / "failure_gdop.svg", res.failure_study);
    } else if (kind == "fuzzy-shares") {
      if (res.sweep.scenarios.empty()) {
        std::fprintf(stderr, "fuzzy-shares plot requires the scenarios stage\n");
        return 2;
      }
      // Average regime shares grouped by the ops-rate knob.
      std::vector<double> knob = cfg.scenario_grid.ops_rate;
      std::vector<std::array<double, 4>> shares(knob.size(), std::array<double, 4>{});
      std::vector<std::size_t> counts(knob.size(), 0);
      for (std::size_t is = 0; is < res.sweep.scenarios.size(); ++is) {
        for (std::size_t k = 0; k < knob.size(); ++k) {
          if (res.sweep.scenarios[is].ops_rate_musd_sat_yr == knob[k]) {
            for (int r = 0; r < 4; ++r)
              shares[k][static_cast<std::size_t>(r)] +=
                  res.sweep.fuzzy_regime_share[is][static_cast<std::size_t>(r)];
            ++counts[k];
          }
        }
      }
      for (std::size_t k = 0; k < knob.size(); ++k)
        if (counts[k] > 0)
          for (auto& v : shares[k]) v /= static_cast<double>(counts[k]);
      io::write_fuzzy_share_svg(out / "fuzzy_shares_ops.svg", knob, shares, "ops rate [$M/sat/yr]");
    } else {
      std::fprintf(stderr, "unknown plot kind '%s'\n", kind.c_str());
      return 2;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GNSS space-segment tradespace exploration"};

  std::string config_path;
  std::string stage = "all";
  std::string out_dir;
  std::vector<std::string> plots;
  long long grid_points = -1;
  long long seed = -1;
  std::string scenarios_flag = "on";

  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--stage", stage,
                 "last stage to run: enumerate|constrain|evaluate|rank|mine|sobol|scenarios|"
                 "failure|all");
  app.add_option("--grid-points", grid_points, "user grid size override");
  app.add_option("--scenarios", scenarios_flag, "on|off: run the scenario sweep");
  app.add_option("--seed", seed, "random seed override");
  app.add_option("--out", out_dir, "output directory override");
  app.add_option("--plot", plots, "plot kinds: tradespace|gdop-latitude|failure|fuzzy-shares");

  CLI11_PARSE(app, argc, argv);

  try {
    config::RunConfig cfg;
    if (!config_path.empty()) cfg = config::load(config_path);
    if (grid_points > 0) cfg.grid_points = static_cast<std::size_t>(grid_points);
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (scenarios_flag == "off" && stage == "all") stage = "sobol";
    if (!plots.empty() && stage == "all") stage = "failure";
    return run_pipeline(cfg, stage == "all" ? "failure" : stage, plots);
  } catch (const ModelError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
