// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace risra {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

/// dBm are referenced to 1 mW.
inline double dbm_to_watt(double dbm) { return db_to_linear(dbm) * 1e-3; }
inline double watt_to_dbm(double watt) { return linear_to_db(watt / 1e-3); }

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// sin(x)/x with the removable singularity handled by its Taylor series.
inline double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

inline Complex unit_phasor(double phase) { return std::polar(1.0, phase); }

}  // namespace risra
