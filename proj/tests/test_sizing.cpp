#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gnsstrade/sizing.hpp"

using namespace gnsstrade;
using namespace gnsstrade::sizing;
using Catch::Approx;

namespace {

// Independent re-evaluation of the EPS chain (different arrangement, long
// double) used as the oracle for eps_sizing.
struct EpsOracle {
  long double m_sa, m_bat, m_pcu, m_eps, p_bol;
};

EpsOracle eps_oracle(long double p_sc, long double h, long double life) {
  const long double mu = 398600.4418L, re = 6378.137L, pi = 3.14159265358979323846L;
  long double a = re + h;
  long double T = 2.0L * pi * std::sqrt(a * a * a / mu);
  long double Te = T * std::asin(re / a) / 3.0L;
  long double Td = T - Te;
  long double Psa = (p_sc * Te / 0.6L + p_sc * Td / 0.8L) / Td;
  long double bol_area = 0.28L * 1368.0L * 0.78L * std::cos(5.0L * pi / 180.0L);
  long double eol_area = bol_area * std::pow(1.0L - 0.037L, life);
  long double area = Psa / eol_area;
  EpsOracle o;
  o.p_bol = bol_area * area;
  o.m_sa = Psa / 40.0L;
  o.m_bat = p_sc * Te / (3600.0L * 0.3L * 0.9L * 130.0L);
  o.m_pcu = 0.0045L * o.p_bol;
  o.m_eps = (o.m_sa + o.m_bat + o.m_pcu) / 0.85L;
  return o;
}

}  // namespace

TEST_CASE("link budget transmit power") {
  // Single carrier at the MEO reference shell.
  PowerBudget one = tx_power(-155.0, 20188.0, 1);
  REQUIRE(one.p_tx_per_freq_w.size() == 1);
  double p_dbw = 10.0 * std::log10(one.p_tx_total_w);
  REQUIRE(p_dbw == Approx(18.9).margin(0.1));
  REQUIRE(one.p_tx_total_w == Approx(78.3).margin(0.5));

  // Higher carrier frequency needs more power: L1 > L2 > L5 at equal target.
  PowerBudget three = tx_power(-155.0, 20188.0, 3);
  REQUIRE(three.p_tx_per_freq_w[0] > three.p_tx_per_freq_w[1]);
  REQUIRE(three.p_tx_per_freq_w[1] > three.p_tx_per_freq_w[2]);
  REQUIRE(three.p_tx_total_w ==
          Approx(one.p_tx_total_w * (1.0 + std::pow(1227.60 / 1575.42, 2) +
                                     std::pow(1176.45 / 1575.42, 2)))
              .epsilon(1e-9));

  REQUIRE_THROWS_AS(tx_power(-155.0, 20188.0, 0), ModelError);
}

TEST_CASE("payload and bus power") {
  auto [pl0, sc0] = payload_and_bus_power(0.0);
  REQUIRE(pl0 == Approx(255.0 / 0.85).epsilon(1e-12));  // 300 W baseline
  REQUIRE(sc0 == Approx(1.4 * pl0).epsilon(1e-12));

  auto [pl, sc] = payload_and_bus_power(169.0);
  REQUIRE(pl == Approx((169.0 / 0.68 + 255.0) / 0.85).epsilon(1e-12));
  REQUIRE(pl == Approx(592.0).margin(1.0));
  REQUIRE(sc / pl == Approx(1.4).epsilon(1e-12));

  // Spacecraft power for the triple-frequency MEO reference chain.
  PowerBudget tx = tx_power(-155.0, 20188.0, 3);
  auto [pl3, sc3] = payload_and_bus_power(tx.p_tx_total_w);
  REQUIRE(sc3 == Approx(848.4).epsilon(0.05));
  REQUIRE_THROWS_AS(payload_and_bus_power(-1.0), ModelError);
}

TEST_CASE("EPS sizing against the independent chain oracle") {
  for (double h : {780.0, 12525.0, 20188.0, 30967.0}) {
    for (double p : {488.0, 848.33, 2122.7}) {
      for (double life : {0.0, 5.0, 15.0}) {
        EpsSizing got = eps_sizing(p, h, life);
        EpsOracle want = eps_oracle(p, h, life);
        REQUIRE(got.m_sa_kg == Approx(static_cast<double>(want.m_sa)).epsilon(1e-9));
        REQUIRE(got.m_bat_kg == Approx(static_cast<double>(want.m_bat)).epsilon(1e-9));
        REQUIRE(got.m_pcu_kg == Approx(static_cast<double>(want.m_pcu)).epsilon(1e-9));
        REQUIRE(got.m_eps_kg == Approx(static_cast<double>(want.m_eps)).epsilon(1e-9));
        REQUIRE(got.p_bol_w == Approx(static_cast<double>(want.p_bol)).epsilon(1e-9));
      }
    }
  }
  // Zero lifetime: no degradation, EOL areal power equals BOL.
  EpsSizing fresh = eps_sizing(848.33, 20188.0, 0.0);
  REQUIRE(fresh.p_eol_area_w_m2 == Approx(fresh.p_bol_area_w_m2).epsilon(1e-12));
  // Compounded degradation over 10 years is about 31%.
  REQUIRE(std::pow(1.0 - 0.037, 10) == Approx(0.686).margin(0.002));
  REQUIRE_THROWS_AS(eps_sizing(0.0, 20188.0, 15.0), ModelError);
}

TEST_CASE("thermal mass is linear in BOL power") {
  REQUIRE(thermal_mass_kg(0.0) == 0.0);
  REQUIRE(thermal_mass_kg(1000.0) == Approx(20.0).epsilon(1e-12));
  REQUIRE(thermal_mass_kg(2.0 * 348.0) == Approx(2.0 * thermal_mass_kg(348.0)).epsilon(1e-12));
  REQUIRE_THROWS_AS(thermal_mass_kg(-1.0), ModelError);
}

TEST_CASE("delta-v budget") {
  // The ADCS term is constant across architectures.
  double adcs = delta_v_budget(20188.0, 15, EolStrategy::kBusinessAsUsual).adcs_ms;
  REQUIRE(adcs == Approx(67.6).margin(0.5));
  for (double h : {780.0, 8330.0, 30967.0})
    REQUIRE(delta_v_budget(h, 10, EolStrategy::kDeorbitSubsystem).adcs_ms == Approx(adcs));

  // Maneuver branches.
  REQUIRE(delta_v_budget(780.0, 15, EolStrategy::kBusinessAsUsual).maneuver_ms ==
          Approx(9.0).epsilon(1e-12));
  REQUIRE(delta_v_budget(1250.0, 15, EolStrategy::kBusinessAsUsual).maneuver_ms ==
          Approx(1.2).epsilon(1e-12));
  REQUIRE(delta_v_budget(20188.0, 15, EolStrategy::kBusinessAsUsual).maneuver_ms ==
          Approx(15.0 * 365.0 * 0.17 / 500.0).epsilon(1e-12));
  REQUIRE(delta_v_budget(20188.0, 15, EolStrategy::kBusinessAsUsual).maneuver_ms ==
          Approx(1.86).margin(0.02));

  // Disposal: graveyard raise in MEO under BAU, perigee lowering otherwise.
  auto meo = delta_v_budget(20188.0, 15, EolStrategy::kBusinessAsUsual);
  REQUIRE(meo.disposal_ms == Approx(hohmann_delta_v_ms(26566.137, 27066.137)).epsilon(1e-12));
  REQUIRE(meo.disposal_ms == Approx(35.96).margin(0.1));
  auto leo = delta_v_budget(780.0, 15, EolStrategy::kBusinessAsUsual);
  REQUIRE(leo.disposal_ms == Approx(perigee_lowering_delta_v_ms(7158.137, 6878.137)).epsilon(1e-12));
  auto deorbit = delta_v_budget(20188.0, 15, EolStrategy::kDeorbitSubsystem);
  REQUIRE(deorbit.disposal_ms ==
          Approx(perigee_lowering_delta_v_ms(26566.137, 6878.137)).epsilon(1e-12));
  REQUIRE(meo.total_ms() == Approx(meo.adcs_ms + meo.maneuver_ms + meo.disposal_ms));
}

TEST_CASE("re-entry delta-v at the low-MEO shell is 10-25% below the MEO shells") {
  double low = perigee_lowering_delta_v_ms(constants::kEarthRadiusKm + 12525.0,
                                           constants::kEarthRadiusKm + 500.0);
  for (double h : {20188.0, 23229.0}) {
    double ref = perigee_lowering_delta_v_ms(constants::kEarthRadiusKm + h,
                                             constants::kEarthRadiusKm + 500.0);
    double saving = 1.0 - low / ref;
    REQUIRE(saving > 0.10);
    REQUIRE(saving < 0.25);
  }
}

TEST_CASE("propellant and propulsion sizing") {
  PropellantSizing zero = propellant_and_propulsion(500.0, 0.0);
  REQUIRE(zero.m_propellant_kg == 0.0);
  REQUIRE(zero.m_propulsion_kg == Approx(4.0).epsilon(1e-12));

  PropellantSizing s = propellant_and_propulsion(592.0, 100.0);
  REQUIRE(s.m_dry_estimate_kg == Approx(7.5 * std::pow(592.0, 0.65)).epsilon(1e-12));
  REQUIRE(s.m_dry_estimate_kg == Approx(476.0).margin(1.0));
  REQUIRE(s.m_propellant_kg ==
          Approx(s.m_dry_estimate_kg * (std::exp(100.0 / (9.8 * 227.0)) - 1.0)).epsilon(1e-12));

  // Strictly increasing in delta-v.
  double prev = 0;
  for (double dv : {10.0, 50.0, 120.0, 400.0}) {
    double cur = propellant_and_propulsion(592.0, dv).m_propellant_kg;
    REQUIRE(cur > prev);
    prev = cur;
  }
  REQUIRE_THROWS_AS(propellant_and_propulsion(-1.0, 10.0), ModelError);
}

TEST_CASE("TT&C redundancy level") {
  REQUIRE(ttc_redundancy(12.0) == Approx(1.0).epsilon(1e-12));
  REQUIRE(ttc_redundancy(15.0) == Approx(1.11).margin(0.005));
  REQUIRE(ttc_redundancy(5.0) < ttc_redundancy(10.0));
  REQUIRE(ttc_redundancy(10.0) < ttc_redundancy(15.0));
  REQUIRE_THROWS_AS(ttc_redundancy(0.0), ModelError);
}

TEST_CASE("initial dry mass from subsystem masses") {
  // Round-number check: n = 1 makes the denominator 0.66.
  MassFractionModel m;
  m.payload_mass_kg = 150.0;
  REQUIRE(dry_mass_kg(100.0, 50.0, 30.0, 1.0, m) == Approx(330.0 / 0.66).epsilon(1e-12));
  // Pathological redundancy makes the fractions exceed unity.
  REQUIRE_THROWS_AS(dry_mass_kg(10.0, 10.0, 10.0, 15.0), ModelError);
}

TEST_CASE("dry mass fixed point reconstructs the fraction masses") {
  double n = ttc_redundancy(15.0);
  double m_eps = 71.8, m_th = 40.8, m_prop = 6.4;
  double dry = dry_mass_kg(m_eps, m_th, m_prop, n);
  double rebuilt = m_eps + m_th + m_prop + 150.0 + dry * (0.05 * n + 0.06 + 0.23);
  REQUIRE(rebuilt == Approx(dry).epsilon(1e-9));
}

TEST_CASE("radiation shielding thickness lookups") {
  REQUIRE(radiation_thickness_mm(20188, 56, 15) == 9.0);
  REQUIRE(radiation_thickness_mm(1250, 87, 15) == 40.0);
  REQUIRE(radiation_thickness_mm(780, 87, 5) == 3.0);
  REQUIRE(radiation_thickness_mm(30967, 64, 10) == 6.0);
  // MEO shells have no polar entry; such architectures are filtered upstream.
  REQUIRE_THROWS_AS(radiation_thickness_mm(20188, 87, 15), ModelError);
  REQUIRE_THROWS_AS(radiation_thickness_mm(20188, 56, 12), ModelError);
}

TEST_CASE("radiation shell mass") {
  // Spherical-shell oracle.
  double m_dry = 414.86;
  double t = 0.009;
  double v = m_dry / 221.0;
  double r = std::cbrt(3.0 * v / (4.0 * constants::kPi));
  double shell = 2700.0 * (4.0 / 3.0) * constants::kPi * (std::pow(r + t, 3) - std::pow(r, 3));
  REQUIRE(radiation_penalty_kg(20188, 56, 15, m_dry) == Approx(shell).epsilon(1e-12));
  // Zero thickness -> zero add-on mass.
  REQUIRE(radiation_shell_mass_kg(m_dry, 0.0) == 0.0);
  // Monotone in the thickness (1250/15yr is the thickest entry).
  REQUIRE(radiation_penalty_kg(1250, 87, 15, m_dry) > radiation_penalty_kg(780, 87, 15, m_dry));
  REQUIRE(radiation_shell_mass_kg(m_dry, 9.0) > radiation_shell_mass_kg(m_dry, 5.0));
}

TEST_CASE("full sizing chain for the MEO reference configuration") {
  SizingInputs in;  // defaults are the 20188 km triple-frequency reference
  in.is_reference = true;
  SizingReport rep = size_satellite(in);

  REQUIRE(rep.power.p_spacecraft_w == Approx(848.4).epsilon(0.05));
  REQUIRE(rep.m_dry_kg == Approx(410.6).epsilon(0.10));
  REQUIRE(rep.m_wet_kg == Approx(434.0).epsilon(0.10));

  // Chain self-consistency identities.
  REQUIRE(std::abs(rep.m_wet_kg - rep.m_dry_kg - rep.m_propellant_kg) < 1e-9);
  REQUIRE(std::abs(rep.m_dry_kg - rep.m_dry_initial_kg - rep.m_rad_kg) < 1e-9);
  REQUIRE(rep.m_rad_kg == 0.0);  // shielding disabled in the baseline model
}

TEST_CASE("sizing chain with the shielding add-on enabled") {
  SizingModel model;
  model.radiation.apply_shielding = true;

  SizingInputs in;
  in.altitude_km = 23229;
  in.inclination_deg = 64;
  in.rx_power_dbw = -150;
  SizingReport rep = size_satellite(in, model);
  REQUIRE(rep.m_rad_kg > 0.0);
  REQUIRE(rep.m_dry_kg == Approx(915.0).epsilon(0.10));
  REQUIRE(std::abs(rep.m_dry_kg - rep.m_dry_initial_kg - rep.m_rad_kg) < 1e-9);

  // Reference rows model existing radiation-hardened designs: no add-on.
  SizingInputs ref = in;
  ref.is_reference = true;
  SizingReport ref_rep = size_satellite(ref, model);
  REQUIRE(ref_rep.m_rad_kg == 0.0);
}

TEST_CASE("dry mass is monotone in power and frequency count") {
  SizingInputs base;
  auto dry = [&](double p, int f) {
    SizingInputs in = base;
    in.rx_power_dbw = p;
    in.n_freqs = f;
    return size_satellite(in).m_dry_kg;
  };
  REQUIRE(dry(-155, 3) <= dry(-150, 3));
  REQUIRE(dry(-150, 3) <= dry(-145, 3));
  REQUIRE(dry(-155, 1) <= dry(-155, 2));
  REQUIRE(dry(-155, 2) <= dry(-155, 3));
}

TEST_CASE("scenario modifiers flow through the chain") {
  SizingInputs in;
  SizingReport base = size_satellite(in);

  SizingInputs heavy = in;
  heavy.dry_mass_delta = 0.20;
  SizingReport h = size_satellite(heavy);
  REQUIRE(h.m_dry_kg == Approx(1.2 * base.m_dry_kg).epsilon(1e-12));
  REQUIRE(h.m_propellant_kg == Approx(base.m_propellant_kg).epsilon(1e-12));
  REQUIRE(h.m_wet_kg == Approx(h.m_dry_kg + base.m_propellant_kg).epsilon(1e-12));

  SizingInputs deorbit = in;
  deorbit.eol = EolStrategy::kDeorbitSubsystem;
  SizingReport d = size_satellite(deorbit);
  REQUIRE(d.dv.disposal_ms > base.dv.disposal_ms);
  REQUIRE(d.m_propellant_kg > base.m_propellant_kg);
}
