// units.hpp — Unit conventions and conversions.
//
// Internally every frequency and rate is an angular frequency in ps^-1 and
// every time is in ps. Inputs arrive in meV, ueV and K and are converted here.

#pragma once

#include <limits>

namespace qdsps::units {

inline constexpr double hbar_meV_ps = 0.6582119569;  // meV ps
inline constexpr double kB_meV_per_K = 0.08617333;   // meV / K
inline constexpr double pi = 3.14159265358979323846;

constexpr double from_meV(double meV) { return meV / hbar_meV_ps; }
constexpr double from_ueV(double ueV) { return 1e-3 * ueV / hbar_meV_ps; }
constexpr double to_meV(double rate) { return rate * hbar_meV_ps; }
constexpr double to_ueV(double rate) { return 1e3 * rate * hbar_meV_ps; }

// Inverse temperature hbar/(kB T) in ps; +inf at T = 0.
constexpr double inverse_temperature(double temperature_K) {
    if (temperature_K <= 0.0) return std::numeric_limits<double>::infinity();
    return hbar_meV_ps / (kB_meV_per_K * temperature_K);
}

} // namespace qdsps::units
