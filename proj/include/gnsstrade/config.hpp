#pragma once

#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "gnsstrade/analytics.hpp"
#include "gnsstrade/tradespace.hpp"

// Run configuration: decision options, model constants, geometry sampling,
// scenario grid and output control. Defaults reproduce the baseline case;
// every value is echoed into the run manifest.

namespace gnsstrade::config {

using nlohmann::json;

struct RunConfig {
  // Geometry sampling.
  std::size_t grid_points = 4000;
  double sim_duration_s = 86400.0;
  double prop_step_deg = 0.5;
  int dop_step_multiplier = 10;
  double mask_deg = 5.0;
  int walker_phasing_f = 1;

  // Decision options and constraint policy.
  tradespace::DecisionOptions options;
  tradespace::EvaluationModel model;

  // Scenario sweep.
  analytics::ScenarioGrid scenario_grid;

  // Failure study.
  int failure_trials = 10;

  // Execution.
  std::uint64_t seed = 20240817;
  unsigned n_threads = std::thread::hardware_concurrency();
  std::string out_dir = "out";

  geometry::GdopCache::Params gdop_params() const {
    geometry::GdopCache::Params p;
    p.duration_s = sim_duration_s;
    p.prop_step_deg = prop_step_deg;
    p.dop_step_multiplier = dop_step_multiplier;
    p.mask_deg = mask_deg;
    p.phasing_f = walker_phasing_f;
    p.n_threads = n_threads;
    return p;
  }
};

namespace detail {

template <typename T>
void maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

inline sizing::EolStrategy eol_from_string(const std::string& s) {
  if (s == "bau") return sizing::EolStrategy::kBusinessAsUsual;
  if (s == "deorbit") return sizing::EolStrategy::kDeorbitSubsystem;
  throw ModelError(ErrorCode::kInvalidInput, "config: unknown EOL strategy '" + s + "'");
}

inline std::string eol_to_string(sizing::EolStrategy s) {
  return s == sizing::EolStrategy::kBusinessAsUsual ? "bau" : "deorbit";
}

}  // namespace detail

inline json to_json(const RunConfig& c) {
  json j;
  j["grid_points"] = c.grid_points;
  j["sim_duration_s"] = c.sim_duration_s;
  j["prop_step_deg"] = c.prop_step_deg;
  j["dop_step_multiplier"] = c.dop_step_multiplier;
  j["mask_deg"] = c.mask_deg;
  j["walker_phasing_f"] = c.walker_phasing_f;
  j["seed"] = c.seed;
  j["n_threads"] = c.n_threads;
  j["out_dir"] = c.out_dir;
  j["failure_trials"] = c.failure_trials;

  j["options"] = {{"altitudes_km", c.options.altitudes_km},
                  {"sat_counts", c.options.sat_counts},
                  {"inclinations_deg", c.options.inclinations_deg},
                  {"plane_counts", c.options.plane_counts},
                  {"rx_powers_dbw", c.options.rx_powers_dbw},
                  {"freq_counts", c.options.freq_counts},
                  {"lifetimes_yr", c.options.lifetimes_yr}};

  const auto& u = c.model.uere;
  j["uere"] = {{"sisre_m", u.sisre_m},
               {"tropo_m", u.tropo_m},
               {"iono_single_m", u.iono_single_m},
               {"iono_dual_m", u.iono_dual_m},
               {"triple_freq_factor", u.triple_freq_factor},
               {"multipath_elev_deg", u.multipath_elev_deg},
               {"code_sigma_mode",
                u.code_mode == signal::CodeSigmaMode::kTable ? "table" : "formula"}};

  const auto& s = c.model.sizing;
  j["link"] = {{"tx_gain_dbi", s.link.tx_gain_dbi},
               {"rx_gain_dbi", s.link.rx_gain_dbi},
               {"polarization_loss_db", s.link.polarization_loss_db},
               {"excess_loss_db", s.link.excess_loss_db},
               {"range_elev_deg", s.link.range_elev_deg}};
  j["payload"] = {{"twta_efficiency", s.payload.twta_efficiency},
                  {"base_load_w", s.payload.base_load_w},
                  {"thermal_fraction", s.payload.thermal_fraction},
                  {"bus_factor", s.payload.bus_factor}};
  j["eps"] = {{"eclipse_efficiency", s.eps.eclipse_efficiency},
              {"daylight_efficiency", s.eps.daylight_efficiency},
              {"solar_constant_w_m2", s.eps.solar_constant_w_m2},
              {"cell_efficiency", s.eps.cell_efficiency},
              {"inherent_degradation", s.eps.inherent_degradation},
              {"sun_incidence_deg", s.eps.sun_incidence_deg},
              {"yearly_degradation", s.eps.yearly_degradation},
              {"array_perf_w_kg", s.eps.array_perf_w_kg},
              {"battery_wh_kg", s.eps.battery_wh_kg},
              {"battery_dod", s.eps.battery_dod},
              {"transmission_efficiency", s.eps.transmission_efficiency},
              {"pcu_kg_per_w", s.eps.pcu_kg_per_w},
              {"dist_fraction", s.eps.dist_fraction}};
  j["thermal_kg_per_w"] = s.thermal_kg_per_w;
  j["delta_v"] = {{"isp_s", s.delta_v.isp_s},
                  {"g_ms2", s.delta_v.g_ms2},
                  {"adcs_ref_dry_kg", s.delta_v.adcs_ref_dry_kg},
                  {"adcs_kg_per_year", s.delta_v.adcs_kg_per_year},
                  {"adcs_ref_lifetime_yr", s.delta_v.adcs_ref_lifetime_yr},
                  {"maneuver_leo780_ms_yr", s.delta_v.maneuver_leo780_ms_yr},
                  {"maneuver_leo1250_ms_yr", s.delta_v.maneuver_leo1250_ms_yr},
                  {"maneuver_meo_ms", s.delta_v.maneuver_meo_ms},
                  {"maneuver_interval_days", s.delta_v.maneuver_interval_days},
                  {"graveyard_raise_km", s.delta_v.graveyard_raise_km},
                  {"disposal_perigee_km", s.delta_v.disposal_perigee_km}};
  j["propulsion"] = {{"isp_s", s.propulsion.isp_s},
                     {"g_ms2", s.propulsion.g_ms2},
                     {"dry_mass_coeff", s.propulsion.dry_mass_coeff},
                     {"dry_mass_exp", s.propulsion.dry_mass_exp},
                     {"base_mass_kg", s.propulsion.base_mass_kg},
                     {"tank_coeff", s.propulsion.tank_coeff}};
  j["mass_fractions"] = {{"payload_mass_kg", s.fractions.payload_mass_kg},
                         {"ttc_fraction", s.fractions.ttc_fraction},
                         {"adcs_fraction", s.fractions.adcs_fraction},
                         {"struct_fraction", s.fractions.struct_fraction}};
  j["radiation"] = {{"satellite_density_kg_m3", s.radiation.satellite_density_kg_m3},
                    {"aluminum_density_kg_m3", s.radiation.aluminum_density_kg_m3},
                    {"apply_shielding", s.radiation.apply_shielding}};

  json catalog = json::array();
  for (const auto& b : c.model.bus_catalog)
    catalog.push_back({{"name", b.name},
                       {"max_dry_mass_kg", b.max_dry_mass_kg},
                       {"unit_cost_musd", b.unit_cost_musd}});
  j["bus_catalog"] = catalog;
  j["launch"] = {{"soyuz_cost_musd", c.model.launch.soyuz_cost_musd},
                 {"soyuz_perf_slope", c.model.launch.soyuz_perf_slope},
                 {"soyuz_perf_intercept_kg", c.model.launch.soyuz_perf_intercept_kg},
                 {"falcon_cost_musd_per_kg", c.model.launch.falcon_cost_musd_per_kg}};
  j["horizon_yr"] = c.model.horizon_yr;

  const auto& p = c.model.constraints;
  j["constraints"] = {{"polar_inclination_deg", p.polar_inclination_deg},
                      {"leo_min_sats", p.leo_min_sats},
                      {"leo_planes", p.leo_planes},
                      {"meo_inclinations", p.meo_inclinations},
                      {"meo_max_sats", p.meo_max_sats},
                      {"meo_planes", p.meo_planes},
                      {"gdop_gate", p.gdop_gate},
                      {"cost_cap_busd", p.cost_cap_busd}};

  std::vector<std::string> eols;
  for (auto e : c.scenario_grid.eol) eols.push_back(detail::eol_to_string(e));
  j["scenarios"] = {{"learning", c.scenario_grid.learning},
                    {"dry_mass_delta", c.scenario_grid.dry_mass_delta},
                    {"eol", eols},
                    {"launch_discount", c.scenario_grid.launch_discount},
                    {"t_wait_min", c.scenario_grid.t_wait_min},
                    {"ops_rate", c.scenario_grid.ops_rate}};

  j["physical_constants"] = {{"mu_km3_s2", constants::kMuEarthKm3S2},
                             {"earth_radius_km", constants::kEarthRadiusKm},
                             {"earth_rotation_rad_s", constants::kEarthRotationRadS},
                             {"speed_of_light_m_s", constants::kSpeedOfLightMS},
                             {"boltzmann_j_k", constants::kBoltzmannJK},
                             {"carrier_freq_mhz", constants::kCarrierFreqMhz}};
  return j;
}

inline void apply_json(const json& j, RunConfig& c) {
  using detail::maybe;
  maybe(j, "grid_points", c.grid_points);
  maybe(j, "sim_duration_s", c.sim_duration_s);
  maybe(j, "prop_step_deg", c.prop_step_deg);
  maybe(j, "dop_step_multiplier", c.dop_step_multiplier);
  maybe(j, "mask_deg", c.mask_deg);
  maybe(j, "walker_phasing_f", c.walker_phasing_f);
  maybe(j, "seed", c.seed);
  maybe(j, "n_threads", c.n_threads);
  maybe(j, "out_dir", c.out_dir);
  maybe(j, "failure_trials", c.failure_trials);

  if (j.contains("options")) {
    const json& o = j.at("options");
    maybe(o, "altitudes_km", c.options.altitudes_km);
    maybe(o, "sat_counts", c.options.sat_counts);
    maybe(o, "inclinations_deg", c.options.inclinations_deg);
    maybe(o, "plane_counts", c.options.plane_counts);
    maybe(o, "rx_powers_dbw", c.options.rx_powers_dbw);
    maybe(o, "freq_counts", c.options.freq_counts);
    maybe(o, "lifetimes_yr", c.options.lifetimes_yr);
  }
  if (j.contains("uere")) {
    const json& o = j.at("uere");
    auto& u = c.model.uere;
    maybe(o, "sisre_m", u.sisre_m);
    maybe(o, "tropo_m", u.tropo_m);
    maybe(o, "iono_single_m", u.iono_single_m);
    maybe(o, "iono_dual_m", u.iono_dual_m);
    maybe(o, "triple_freq_factor", u.triple_freq_factor);
    maybe(o, "multipath_elev_deg", u.multipath_elev_deg);
    if (o.contains("code_sigma_mode")) {
      std::string mode = o.at("code_sigma_mode").get<std::string>();
      if (mode == "table")
        u.code_mode = signal::CodeSigmaMode::kTable;
      else if (mode == "formula")
        u.code_mode = signal::CodeSigmaMode::kFormula;
      else
        throw ModelError(ErrorCode::kInvalidInput,
                         "config: uere.code_sigma_mode must be 'table' or 'formula'");
    }
  }
  if (j.contains("link")) {
    const json& o = j.at("link");
    auto& l = c.model.sizing.link;
    maybe(o, "tx_gain_dbi", l.tx_gain_dbi);
    maybe(o, "rx_gain_dbi", l.rx_gain_dbi);
    maybe(o, "polarization_loss_db", l.polarization_loss_db);
    maybe(o, "excess_loss_db", l.excess_loss_db);
    maybe(o, "range_elev_deg", l.range_elev_deg);
  }
  if (j.contains("payload")) {
    const json& o = j.at("payload");
    auto& p = c.model.sizing.payload;
    maybe(o, "twta_efficiency", p.twta_efficiency);
    maybe(o, "base_load_w", p.base_load_w);
    maybe(o, "thermal_fraction", p.thermal_fraction);
    maybe(o, "bus_factor", p.bus_factor);
  }
  if (j.contains("eps")) {
    const json& o = j.at("eps");
    auto& e = c.model.sizing.eps;
    maybe(o, "eclipse_efficiency", e.eclipse_efficiency);
    maybe(o, "daylight_efficiency", e.daylight_efficiency);
    maybe(o, "solar_constant_w_m2", e.solar_constant_w_m2);
    maybe(o, "cell_efficiency", e.cell_efficiency);
    maybe(o, "inherent_degradation", e.inherent_degradation);
    maybe(o, "sun_incidence_deg", e.sun_incidence_deg);
    maybe(o, "yearly_degradation", e.yearly_degradation);
    maybe(o, "array_perf_w_kg", e.array_perf_w_kg);
    maybe(o, "battery_wh_kg", e.battery_wh_kg);
    maybe(o, "battery_dod", e.battery_dod);
    maybe(o, "transmission_efficiency", e.transmission_efficiency);
    maybe(o, "pcu_kg_per_w", e.pcu_kg_per_w);
    maybe(o, "dist_fraction", e.dist_fraction);
  }
  maybe(j, "thermal_kg_per_w", c.model.sizing.thermal_kg_per_w);
  if (j.contains("radiation")) {
    const json& o = j.at("radiation");
    auto& r = c.model.sizing.radiation;
    maybe(o, "satellite_density_kg_m3", r.satellite_density_kg_m3);
    maybe(o, "aluminum_density_kg_m3", r.aluminum_density_kg_m3);
    maybe(o, "apply_shielding", r.apply_shielding);
  }
  if (j.contains("bus_catalog")) {
    c.model.bus_catalog.clear();
    for (const auto& e : j.at("bus_catalog"))
      c.model.bus_catalog.push_back({e.at("name").get<std::string>(),
                                     e.at("max_dry_mass_kg").get<double>(),
                                     e.at("unit_cost_musd").get<double>()});
  }
  if (j.contains("launch")) {
    const json& o = j.at("launch");
    auto& l = c.model.launch;
    maybe(o, "soyuz_cost_musd", l.soyuz_cost_musd);
    maybe(o, "soyuz_perf_slope", l.soyuz_perf_slope);
    maybe(o, "soyuz_perf_intercept_kg", l.soyuz_perf_intercept_kg);
    maybe(o, "falcon_cost_musd_per_kg", l.falcon_cost_musd_per_kg);
  }
  maybe(j, "horizon_yr", c.model.horizon_yr);
  if (j.contains("constraints")) {
    const json& o = j.at("constraints");
    auto& p = c.model.constraints;
    maybe(o, "polar_inclination_deg", p.polar_inclination_deg);
    maybe(o, "leo_min_sats", p.leo_min_sats);
    maybe(o, "leo_planes", p.leo_planes);
    maybe(o, "meo_inclinations", p.meo_inclinations);
    maybe(o, "meo_max_sats", p.meo_max_sats);
    maybe(o, "meo_planes", p.meo_planes);
    maybe(o, "gdop_gate", p.gdop_gate);
    maybe(o, "cost_cap_busd", p.cost_cap_busd);
  }
  if (j.contains("scenarios")) {
    const json& o = j.at("scenarios");
    auto& g = c.scenario_grid;
    maybe(o, "learning", g.learning);
    maybe(o, "dry_mass_delta", g.dry_mass_delta);
    maybe(o, "launch_discount", g.launch_discount);
    maybe(o, "t_wait_min", g.t_wait_min);
    maybe(o, "ops_rate", g.ops_rate);
    if (o.contains("eol")) {
      g.eol.clear();
      for (const auto& s : o.at("eol")) g.eol.push_back(detail::eol_from_string(s.get<std::string>()));
    }
  }
}

inline RunConfig load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError(ErrorCode::kInvalidInput, "cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ModelError(ErrorCode::kInvalidInput, "config parse error in " + path + ": " + e.what());
  }
  RunConfig c;
  apply_json(j, c);
  return c;
}

}  // namespace gnsstrade::config
