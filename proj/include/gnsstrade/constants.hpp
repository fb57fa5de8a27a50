#pragma once

#include <array>

// Physical constants and the default decision-option lists shared across the
// library. Values that feed the models are deliberately kept here (not
// scattered) so the run manifest can echo every one of them.

namespace gnsstrade::constants {

// WGS-84 / standard astrodynamic values.
inline constexpr double kMuEarthKm3S2 = 398600.4418;     // gravitational parameter [km^3/s^2]
inline constexpr double kEarthRadiusKm = 6378.137;       // mean equatorial radius [km]
inline constexpr double kEarthRotationRadS = 7.2921159e-5;
inline constexpr double kSpeedOfLightMS = 2.99792458e8;  // [m/s]
inline constexpr double kBoltzmannJK = 1.38e-23;         // [J/K]
inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg2rad(double d) { return d * kPi / 180.0; }
inline constexpr double rad2deg(double r) { return r * 180.0 / kPi; }

// Decision options (one option per decision defines an architecture).
inline constexpr std::array<double, 7> kAltitudeOptionsKm = {
    780, 1250, 8330, 12525, 20188, 23229, 30967};
inline constexpr std::array<int, 13> kSatCountOptions = {
    20, 24, 27, 30, 48, 60, 84, 96, 360, 480, 600, 720, 840};
inline constexpr std::array<double, 3> kInclinationOptionsDeg = {87, 56, 64};
inline constexpr std::array<int, 6> kPlaneCountOptions = {3, 4, 5, 6, 24, 30};
inline constexpr std::array<double, 3> kRxPowerOptionsDbw = {-155, -150, -145};
inline constexpr std::array<int, 3> kFreqCountOptions = {1, 2, 3};
inline constexpr std::array<int, 3> kLifetimeOptionsYr = {5, 10, 15};

// Navigation carrier frequencies [MHz], in the order they are added.
inline constexpr std::array<double, 3> kCarrierFreqMhz = {1575.42, 1227.60, 1176.45};

}  // namespace gnsstrade::constants
