#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "gnsstrade/constants.hpp"
#include "gnsstrade/error.hpp"
#include "gnsstrade/orbits.hpp"

// Single-satellite sizing: link-budget transmit power, payload/bus power,
// EPS/thermal/propulsion masses, delta-V and propellant, COTS radiation
// shielding penalty, dry and wet mass.

namespace gnsstrade::sizing {

enum class EolStrategy {
  kBusinessAsUsual,   // graveyard raise in MEO, perigee lowering in LEO
  kDeorbitSubsystem,  // perigee lowering to 500 km everywhere
};

struct PowerBudget {
  std::vector<double> p_tx_per_freq_w;
  double p_tx_total_w = 0;
  double p_payload_w = 0;
  double p_spacecraft_w = 0;
  double p_bol_w = 0;
  double p_eol_area_w_m2 = 0;
  double solar_array_area_m2 = 0;
};

struct DeltaVBudget {
  double adcs_ms = 0;
  double maneuver_ms = 0;
  double disposal_ms = 0;
  EolStrategy eol_strategy = EolStrategy::kBusinessAsUsual;
  double total_ms() const { return adcs_ms + maneuver_ms + disposal_ms; }
};

struct SizingReport {
  PowerBudget power;
  DeltaVBudget dv;
  double m_sa_kg = 0;
  double m_bat_kg = 0;
  double m_pcu_kg = 0;
  double m_eps_kg = 0;
  double m_thermal_kg = 0;
  double m_propulsion_kg = 0;
  double m_propellant_kg = 0;
  double m_rad_kg = 0;  // applied shielding add-on (0 when shielding disabled)
  double ttc_redundancy_n = 0;
  double m_dry_initial_kg = 0;
  double m_dry_kg = 0;  // final dry mass, after shielding and scenario modifiers
  double m_wet_kg = 0;
};

struct LinkBudgetModel {
  double tx_gain_dbi = 13.0;
  double rx_gain_dbi = 0.0;
  double polarization_loss_db = 2.0;
  double excess_loss_db = 0.5;
  double range_elev_deg = 5.0;  // mask elevation defining the maximum range
};

// Per-carrier transmit power [W] closing the link at the maximum slant range.
inline PowerBudget tx_power(double rx_power_dbw, double altitude_km, int n_freqs,
                            const LinkBudgetModel& model = {}) {
  if (n_freqs < 1 || n_freqs > 3)
    throw ModelError(ErrorCode::kInvalidInput, "n_freqs must be 1, 2 or 3");
  PowerBudget out;
  const double r_max_m = orbits::max_slant_range_km(altitude_km, model.range_elev_deg) * 1000.0;
  for (int i = 0; i < n_freqs; ++i) {
    double f_hz = constants::kCarrierFreqMhz[static_cast<std::size_t>(i)] * 1e6;
    double path_db =
        20.0 * std::log10(constants::kSpeedOfLightMS / (4.0 * constants::kPi * f_hz * r_max_m));
    double p_dbw = rx_power_dbw - model.rx_gain_dbi - model.tx_gain_dbi +
                   model.excess_loss_db + model.polarization_loss_db - path_db;
    out.p_tx_per_freq_w.push_back(std::pow(10.0, p_dbw / 10.0));
    out.p_tx_total_w += out.p_tx_per_freq_w.back();
  }
  return out;
}

struct PayloadPowerModel {
  double twta_efficiency = 0.68;
  double base_load_w = 255.0;      // 2xPHM + 2xRAFS + NSGU + FGUU + RTU
  double thermal_fraction = 0.15;  // payload thermal share of total payload power
  double bus_factor = 1.4;         // spacecraft power relative to payload power
};

inline std::pair<double, double> payload_and_bus_power(double p_tx_total_w,
                                                       const PayloadPowerModel& model = {}) {
  if (p_tx_total_w < 0) throw ModelError(ErrorCode::kInvalidInput, "transmit power must be >= 0");
  double p_pl = (p_tx_total_w / model.twta_efficiency + model.base_load_w) /
                (1.0 - model.thermal_fraction);
  return {p_pl, model.bus_factor * p_pl};
}

struct EpsModel {
  double eclipse_efficiency = 0.6;   // X_e
  double daylight_efficiency = 0.8;  // X_d
  double solar_constant_w_m2 = 1368.0;
  double cell_efficiency = 0.28;
  double inherent_degradation = 0.78;  // I_d
  double sun_incidence_deg = 5.0;
  double yearly_degradation = 0.037;  // compounded per year
  double array_perf_w_kg = 40.0;
  double battery_wh_kg = 130.0;
  double battery_dod = 0.30;
  double transmission_efficiency = 0.9;
  double pcu_kg_per_w = 0.0045;
  double dist_fraction = 0.15;  // distribution share of the EPS mass
};

struct EpsSizing {
  double m_sa_kg = 0;
  double m_bat_kg = 0;
  double m_pcu_kg = 0;
  double m_eps_kg = 0;
  double p_sa_w = 0;
  double p_bol_w = 0;
  double p_bol_area_w_m2 = 0;
  double p_eol_area_w_m2 = 0;
  double solar_array_area_m2 = 0;
};

// Solar array / battery / PCU / distribution chain. The array is sized for
// end-of-life areal power after compounded yearly degradation; the battery
// covers the maximum-eclipse load.
inline EpsSizing eps_sizing(double p_spacecraft_w, double altitude_km, double lifetime_yr,
                            const EpsModel& m = {}) {
  if (p_spacecraft_w <= 0)
    throw ModelError(ErrorCode::kInvalidInput, "spacecraft power must be positive");
  if (lifetime_yr < 0) throw ModelError(ErrorCode::kInvalidInput, "lifetime must be >= 0");
  EpsSizing out;
  const double period = orbits::orbital_period_s(altitude_km);
  const double t_eclipse = orbits::max_eclipse_duration_s(altitude_km);
  const double t_day = period - t_eclipse;

  out.p_sa_w = (p_spacecraft_w * t_eclipse / m.eclipse_efficiency +
                p_spacecraft_w * t_day / m.daylight_efficiency) /
               t_day;
  out.p_bol_area_w_m2 = m.cell_efficiency * m.solar_constant_w_m2 * m.inherent_degradation *
                        std::cos(constants::deg2rad(m.sun_incidence_deg));
  out.p_eol_area_w_m2 = out.p_bol_area_w_m2 * std::pow(1.0 - m.yearly_degradation, lifetime_yr);
  out.solar_array_area_m2 = out.p_sa_w / out.p_eol_area_w_m2;
  out.p_bol_w = out.p_bol_area_w_m2 * out.solar_array_area_m2;
  out.m_sa_kg = out.p_sa_w / m.array_perf_w_kg;
  out.m_bat_kg = p_spacecraft_w * t_eclipse /
                 (3600.0 * m.battery_dod * m.transmission_efficiency * m.battery_wh_kg);
  out.m_pcu_kg = m.pcu_kg_per_w * out.p_bol_w;
  // m_eps = m_sa + m_bat + m_pcu + dist_fraction * m_eps
  out.m_eps_kg = (out.m_sa_kg + out.m_bat_kg + out.m_pcu_kg) / (1.0 - m.dist_fraction);
  return out;
}

inline double thermal_mass_kg(double p_bol_w, double kg_per_w = 0.020) {
  if (p_bol_w < 0) throw ModelError(ErrorCode::kInvalidInput, "power must be >= 0");
  return kg_per_w * p_bol_w;
}

struct DeltaVModel {
  double isp_s = 227.0;
  double g_ms2 = 9.8;
  double adcs_ref_dry_kg = 700.0;     // reference satellite for the ADCS budget
  double adcs_kg_per_year = 1.8;
  double adcs_ref_lifetime_yr = 12.0;
  double maneuver_leo780_ms_yr = 0.6;
  double maneuver_leo1250_ms_yr = 0.08;
  double maneuver_meo_ms = 0.17;      // per maneuver interval
  double maneuver_interval_days = 500.0;
  double graveyard_raise_km = 500.0;
  double disposal_perigee_km = 500.0;
};

// Hohmann transfer between circular orbits of radius r_a and r_b [km] -> m/s.
inline double hohmann_delta_v_ms(double r_a_km, double r_b_km) {
  const double mu = constants::kMuEarthKm3S2;
  double at = 0.5 * (r_a_km + r_b_km);
  double dv1 = std::sqrt(mu * (2.0 / r_a_km - 1.0 / at)) - std::sqrt(mu / r_a_km);
  double dv2 = std::sqrt(mu / r_b_km) - std::sqrt(mu * (2.0 / r_b_km - 1.0 / at));
  return (std::abs(dv1) + std::abs(dv2)) * 1000.0;
}

// Single-burn perigee lowering from a circular orbit at r_a to perigee r_b.
inline double perigee_lowering_delta_v_ms(double r_a_km, double r_b_km) {
  const double mu = constants::kMuEarthKm3S2;
  return std::sqrt(mu / r_a_km) * (1.0 - std::sqrt(2.0 * r_b_km / (r_a_km + r_b_km))) * 1000.0;
}

inline bool is_leo(double altitude_km) { return altitude_km < 2000.0; }

inline DeltaVBudget delta_v_budget(double altitude_km, double lifetime_yr, EolStrategy strategy,
                                   const DeltaVModel& m = {}) {
  if (lifetime_yr < 0) throw ModelError(ErrorCode::kInvalidInput, "lifetime must be >= 0");
  DeltaVBudget dv;
  dv.eol_strategy = strategy;
  dv.adcs_ms = m.isp_s * m.g_ms2 *
               std::log((m.adcs_ref_dry_kg + m.adcs_kg_per_year * m.adcs_ref_lifetime_yr) /
                        m.adcs_ref_dry_kg);
  if (altitude_km == 780.0)
    dv.maneuver_ms = lifetime_yr * m.maneuver_leo780_ms_yr;
  else if (altitude_km == 1250.0)
    dv.maneuver_ms = lifetime_yr * m.maneuver_leo1250_ms_yr;
  else
    dv.maneuver_ms = lifetime_yr * 365.0 * m.maneuver_meo_ms / m.maneuver_interval_days;

  const double r_op = constants::kEarthRadiusKm + altitude_km;
  const double r_perigee = constants::kEarthRadiusKm + m.disposal_perigee_km;
  if (strategy == EolStrategy::kBusinessAsUsual && !is_leo(altitude_km))
    dv.disposal_ms = hohmann_delta_v_ms(r_op, r_op + m.graveyard_raise_km);
  else
    dv.disposal_ms = perigee_lowering_delta_v_ms(r_op, r_perigee);
  return dv;
}

struct PropulsionModel {
  double isp_s = 227.0;
  double g_ms2 = 9.8;
  double dry_mass_coeff = 7.5;  // power-law dry-mass estimate from payload power
  double dry_mass_exp = 0.65;
  double base_mass_kg = 4.0;
  double tank_coeff = 0.3;
};

struct PropellantSizing {
  double m_dry_estimate_kg = 0;
  double m_propellant_kg = 0;
  double m_propulsion_kg = 0;
};

// Rocket-equation propellant on the power-law dry-mass estimate, plus the
// propulsion subsystem scaling.
inline PropellantSizing propellant_and_propulsion(double p_payload_w, double delta_v_ms,
                                                  const PropulsionModel& m = {}) {
  if (p_payload_w < 0 || delta_v_ms < 0)
    throw ModelError(ErrorCode::kInvalidInput, "inputs must be >= 0");
  PropellantSizing out;
  out.m_dry_estimate_kg = m.dry_mass_coeff * std::pow(p_payload_w, m.dry_mass_exp);
  out.m_propellant_kg =
      out.m_dry_estimate_kg * (std::exp(delta_v_ms / (m.g_ms2 * m.isp_s)) - 1.0);
  out.m_propulsion_kg = m.base_mass_kg + m.tank_coeff * std::pow(out.m_propellant_kg, 2.0 / 3.0);
  return out;
}

// TT&C redundancy level n for the requested lifetime (not necessarily integer).
inline double ttc_redundancy(double lifetime_yr, double r_ref = 0.88, double t_ref_yr = 12.0) {
  if (lifetime_yr <= 0) throw ModelError(ErrorCode::kInvalidInput, "lifetime must be positive");
  return std::log(1.0 - r_ref) / std::log(1.0 - std::pow(r_ref, lifetime_yr / t_ref_yr));
}

struct MassFractionModel {
  double payload_mass_kg = 150.0;
  double ttc_fraction = 0.05;   // per redundancy level n
  double adcs_fraction = 0.06;
  double struct_fraction = 0.23;
};

// Initial dry mass from explicit subsystem masses and the fraction-based
// TT&C/ADCS/structure shares.
inline double dry_mass_kg(double m_eps_kg, double m_thermal_kg, double m_propulsion_kg,
                          double ttc_n, const MassFractionModel& m = {}) {
  double denom = 1.0 - ttc_n * m.ttc_fraction - m.adcs_fraction - m.struct_fraction;
  if (denom <= 0)
    throw ModelError(ErrorCode::kSizingInfeasible, "mass fractions exceed unity");
  return (m_eps_kg + m_thermal_kg + m_propulsion_kg + m.payload_mass_kg) / denom;
}

struct RadiationModel {
  double satellite_density_kg_m3 = 221.0;
  double aluminum_density_kg_m3 = 2700.0;
  // When false the add-on shielding mass is computed and reported by
  // radiation_penalty_kg but not applied in the sizing chain.
  bool apply_shielding = false;
};

// Required aluminum shielding thickness [mm] for careful-COTS components.
inline double radiation_thickness_mm(double altitude_km, double inclination_deg,
                                     int lifetime_yr) {
  struct Row {
    double h;
    double inc;
    double t5, t10, t15;
  };
  static constexpr Row kTable[] = {
      {780, 87, 3, 4, 5},     {1250, 87, 14, 30, 40},  {8330, 56, 8, 12, 16},
      {8330, 64, 8, 12, 14},  {12525, 56, 7, 9, 10},   {12525, 64, 7, 9, 10},
      {20188, 56, 7, 9, 9},   {20188, 64, 7, 8, 9},    {23229, 56, 7, 8, 9},
      {23229, 64, 7, 8, 9},   {30967, 56, 6, 6, 7},    {30967, 64, 6, 6, 7},
  };
  for (const auto& r : kTable) {
    if (std::abs(r.h - altitude_km) < 1e-6 && std::abs(r.inc - inclination_deg) < 1e-6) {
      if (lifetime_yr == 5) return r.t5;
      if (lifetime_yr == 10) return r.t10;
      if (lifetime_yr == 15) return r.t15;
      throw ModelError(ErrorCode::kMissingTableEntry,
                       "no shielding entry for lifetime " + std::to_string(lifetime_yr));
    }
  }
  throw ModelError(ErrorCode::kMissingTableEntry,
                   "no shielding entry for " + std::to_string(altitude_km) + " km at " +
                       std::to_string(inclination_deg) + " deg");
}

// Mass of the spherical aluminum shell wrapping the equivalent satellite
// volume at the given thickness; zero thickness adds nothing.
inline double radiation_shell_mass_kg(double m_dry_initial_kg, double thickness_mm,
                                      const RadiationModel& m = {}) {
  if (m_dry_initial_kg < 0 || thickness_mm < 0)
    throw ModelError(ErrorCode::kInvalidInput, "inputs must be >= 0");
  if (thickness_mm == 0.0) return 0.0;
  double t_m = thickness_mm * 1e-3;
  double volume = m_dry_initial_kg / m.satellite_density_kg_m3;
  double r = std::cbrt(3.0 * volume / (4.0 * constants::kPi));
  double shell = (4.0 / 3.0) * constants::kPi * (std::pow(r + t_m, 3) - r * r * r);
  return m.aluminum_density_kg_m3 * shell;
}

inline double radiation_penalty_kg(double altitude_km, double inclination_deg, int lifetime_yr,
                                   double m_dry_initial_kg, const RadiationModel& m = {}) {
  double t_mm = radiation_thickness_mm(altitude_km, inclination_deg, lifetime_yr);
  return radiation_shell_mass_kg(m_dry_initial_kg, t_mm, m);
}

struct SizingModel {
  LinkBudgetModel link;
  PayloadPowerModel payload;
  EpsModel eps;
  double thermal_kg_per_w = 0.020;
  DeltaVModel delta_v;
  PropulsionModel propulsion;
  MassFractionModel fractions;
  RadiationModel radiation;
};

struct SizingInputs {
  double altitude_km = 20188;
  double inclination_deg = 56;
  double rx_power_dbw = -155;
  int n_freqs = 3;
  int lifetime_yr = 15;
  // Scenario modifiers.
  EolStrategy eol = EolStrategy::kBusinessAsUsual;
  double dry_mass_delta = 0.0;  // multiplicative, applied to the final dry mass
  // Reference architectures model existing radiation-hardened designs and
  // never receive the COTS shielding add-on.
  bool is_reference = false;
};

inline SizingReport size_satellite(const SizingInputs& in, const SizingModel& model = {}) {
  SizingReport rep;
  rep.power = tx_power(in.rx_power_dbw, in.altitude_km, in.n_freqs, model.link);
  auto [p_pl, p_sc] = payload_and_bus_power(rep.power.p_tx_total_w, model.payload);
  rep.power.p_payload_w = p_pl;
  rep.power.p_spacecraft_w = p_sc;

  EpsSizing eps = eps_sizing(p_sc, in.altitude_km, in.lifetime_yr, model.eps);
  rep.m_sa_kg = eps.m_sa_kg;
  rep.m_bat_kg = eps.m_bat_kg;
  rep.m_pcu_kg = eps.m_pcu_kg;
  rep.m_eps_kg = eps.m_eps_kg;
  rep.power.p_bol_w = eps.p_bol_w;
  rep.power.p_eol_area_w_m2 = eps.p_eol_area_w_m2;
  rep.power.solar_array_area_m2 = eps.solar_array_area_m2;
  rep.m_thermal_kg = thermal_mass_kg(eps.p_bol_w, model.thermal_kg_per_w);

  rep.dv = delta_v_budget(in.altitude_km, in.lifetime_yr, in.eol, model.delta_v);
  PropellantSizing prop = propellant_and_propulsion(p_pl, rep.dv.total_ms(), model.propulsion);
  rep.m_propellant_kg = prop.m_propellant_kg;
  rep.m_propulsion_kg = prop.m_propulsion_kg;

  rep.ttc_redundancy_n = ttc_redundancy(in.lifetime_yr);
  rep.m_dry_initial_kg =
      dry_mass_kg(rep.m_eps_kg, rep.m_thermal_kg, rep.m_propulsion_kg, rep.ttc_redundancy_n,
                  model.fractions);

  if (model.radiation.apply_shielding && !in.is_reference)
    rep.m_rad_kg = radiation_penalty_kg(in.altitude_km, in.inclination_deg, in.lifetime_yr,
                                        rep.m_dry_initial_kg, model.radiation);

  rep.m_dry_kg = (rep.m_dry_initial_kg + rep.m_rad_kg) * (1.0 + in.dry_mass_delta);
  rep.m_wet_kg = rep.m_dry_kg + rep.m_propellant_kg;
  return rep;
}

}  // namespace gnsstrade::sizing
