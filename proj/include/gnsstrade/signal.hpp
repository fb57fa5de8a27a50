#pragma once

#include <cmath>
#include <string>

#include "gnsstrade/constants.hpp"
#include "gnsstrade/error.hpp"
#include "gnsstrade/geometry.hpp"

// Ranging-error budget (UERE) and its combination with GDOP into the user
// navigation error.

namespace gnsstrade::signal {

enum class CodeSigmaMode {
  kTable,    // tabulated values for the three canonical power levels (default)
  kFormula,  // discriminator noise formula as printed
};

struct SignalConfig {
  double rx_power_dbw = -155;
  int n_freqs = 3;
  double t_wait_min = 1.0;

  void validate() const {
    if (n_freqs < 1 || n_freqs > 3)
      throw ModelError(ErrorCode::kInvalidInput, "n_freqs must be 1, 2 or 3");
    if (t_wait_min < 0) throw ModelError(ErrorCode::kInvalidInput, "t_wait must be >= 0");
  }
};

struct UereBudget {
  double sisre_m = 0;
  double tropo_m = 0;
  double iono_m = 0;
  double code_track_m = 0;
  double multipath_m = 0;
  double total_rms_m = 0;  // triple-frequency factor applied when n_freqs == 3

  double rss() const {
    return std::sqrt(sisre_m * sisre_m + tropo_m * tropo_m + iono_m * iono_m +
                     code_track_m * code_track_m + multipath_m * multipath_m);
  }
};

// Receiver thermal noise density N0 [dBW/Hz] from the antenna temperature and
// amplifier noise figure.
inline double noise_density_dbwhz(double t_ant_k, double noise_figure_db) {
  double t_amp = 290.0 * (std::pow(10.0, noise_figure_db / 10.0) - 1.0);
  double t_total = t_ant_k + t_amp;
  if (t_total <= 0) throw ModelError(ErrorCode::kInvalidInput, "non-physical zero temperature");
  return 10.0 * std::log10(constants::kBoltzmannJK * t_total);
}

inline double cn0_dbhz(double rx_power_dbw, double t_ant_k = 100.0,
                       double noise_figure_db = 4.3) {
  return rx_power_dbw - noise_density_dbwhz(t_ant_k, noise_figure_db);
}

// Canonical carrier-to-noise density for the three received power options.
inline double cn0_table_dbhz(double rx_power_dbw) {
  if (rx_power_dbw == -155.0) return 45.9;
  if (rx_power_dbw == -150.0) return 50.9;
  if (rx_power_dbw == -145.0) return 55.9;
  throw ModelError(ErrorCode::kMissingTableEntry,
                   "no tabulated C/N0 for " + std::to_string(rx_power_dbw) + " dBW");
}

// Noncoherent early-minus-late discriminator code tracking noise [m, 1-sigma].
// The formula path evaluates the printed expression; the table path returns
// the canonical values the downstream budget was published with.
inline double code_tracking_sigma_m(double cn0_dbhz_value,
                                    CodeSigmaMode mode = CodeSigmaMode::kFormula) {
  if (mode == CodeSigmaMode::kTable)
    throw ModelError(ErrorCode::kInvalidInput, "table mode is keyed by power level");
  double cn0 = std::pow(10.0, cn0_dbhz_value / 10.0);
  if (cn0 <= 0) throw ModelError(ErrorCode::kInvalidInput, "C/N0 must be positive");
  constexpr double kChipRateHz = 1.023e6;
  constexpr double kLoopBwHz = 1.0;
  constexpr double kCorrSpacing = 0.1;
  constexpr double kIntegrationS = 0.020;
  constexpr double kFrontEndBwHz = 8.0e6;
  const double bfe_tc = kFrontEndBwHz / kChipRateHz;
  double bracket = 1.0 / bfe_tc +
                   (bfe_tc / (constants::kPi - 1.0)) * std::pow(kCorrSpacing - 1.0 / bfe_tc, 2);
  double chips = std::sqrt(kLoopBwHz / (2.0 * cn0) * bracket) *
                 std::sqrt(1.0 + 2.0 / (kIntegrationS * cn0 * (2.0 - kCorrSpacing)));
  return chips * constants::kSpeedOfLightMS / kChipRateHz;
}

inline double code_tracking_sigma_table_m(double rx_power_dbw) {
  if (rx_power_dbw == -155.0) return 0.567;
  if (rx_power_dbw == -150.0) return 0.319;
  if (rx_power_dbw == -145.0) return 0.179;
  throw ModelError(ErrorCode::kMissingTableEntry,
                   "no tabulated code tracking sigma for " + std::to_string(rx_power_dbw) + " dBW");
}

// Multipath error vs elevation [m, 1-sigma].
inline double multipath_sigma_m(double elev_deg) {
  if (elev_deg < 0 || elev_deg > 90)
    throw ModelError(ErrorCode::kInvalidInput, "elevation must lie in [0, 90] deg");
  return 0.148 + 1.146 * std::exp(-0.0471 * elev_deg);
}

// Multipath decorrelation time [min] from the elevation-angle rate [mdeg/s].
inline double decorrelation_time_min(double elev_rate_mdegs) {
  if (elev_rate_mdegs <= 0)
    throw ModelError(ErrorCode::kInvalidInput, "elevation rate must be positive");
  double rate_rad_s = constants::deg2rad(elev_rate_mdegs * 1e-3);
  return 1.0 / (10.0 * rate_rad_s) / 60.0;
}

// Residual multipath after waiting t_wait of a decorrelation window tau.
inline double residual_multipath_m(double sigma_mp_m, double t_wait_min, double tau_min) {
  if (sigma_mp_m < 0 || t_wait_min < 0 || tau_min < 0)
    throw ModelError(ErrorCode::kInvalidInput, "inputs must be >= 0");
  if (t_wait_min > tau_min) return 0.0;
  return sigma_mp_m * (1.0 - t_wait_min / tau_min);
}

struct UereModel {
  double sisre_m = 0.5;
  double tropo_m = 0.2;
  double iono_single_m = 4.0;
  double iono_dual_m = 0.1;
  double triple_freq_factor = 0.825;  // 17.5% improvement over the dual budget
  double multipath_elev_deg = 5.0;    // worst-case mask elevation
  CodeSigmaMode code_mode = CodeSigmaMode::kTable;
};

// Full range-error budget for one signal configuration at one orbit altitude.
// Components are evaluated at the mask elevation; for triple frequency the
// total applies the improvement factor to the dual-frequency RSS.
inline UereBudget uere(const SignalConfig& sig, double altitude_km, const UereModel& model = {}) {
  sig.validate();
  UereBudget b;
  b.sisre_m = model.sisre_m;
  b.tropo_m = model.tropo_m;
  b.iono_m = (sig.n_freqs == 1) ? model.iono_single_m : model.iono_dual_m;
  b.code_track_m = (model.code_mode == CodeSigmaMode::kTable)
                       ? code_tracking_sigma_table_m(sig.rx_power_dbw)
                       : code_tracking_sigma_m(cn0_dbhz(sig.rx_power_dbw), CodeSigmaMode::kFormula);
  double tau = decorrelation_time_min(geometry::median_elevation_rate_mdegs(altitude_km));
  b.multipath_m =
      residual_multipath_m(multipath_sigma_m(model.multipath_elev_deg), sig.t_wait_min, tau);
  b.total_rms_m = (sig.n_freqs == 3) ? model.triple_freq_factor * b.rss() : b.rss();
  return b;
}

inline double une_m(double uere_m, double gdop) {
  if (uere_m < 0 || gdop < 0) throw ModelError(ErrorCode::kInvalidInput, "inputs must be >= 0");
  return uere_m * gdop;
}

}  // namespace gnsstrade::signal
