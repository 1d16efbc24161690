// SPDX-License-Identifier: Apache-2.0
//
// Deterministic far-field model of the BS -> RIS -> UE cascade in the RIS
// principal (x-y) plane: pathloss, total phase, array factor, configuration
// codebook and the resulting complex channel coefficients.
//
// Angles are measured from the RIS normal (the y-axis) and live in [0, pi/2].
// Element m runs from 1 to N_x along the x-axis.
#pragma once

#include <span>
#include <vector>

#include "risra/units.hpp"

namespace risra {

struct Carrier {
  double frequency_hz = 3e9;
  double speed_mps = kSpeedOfLight;

  /// Throws std::invalid_argument unless frequency and speed are positive.
  static Carrier from_frequency(double frequency_hz);

  double wavelength() const { return speed_mps / frequency_hz; }
  double wavenumber() const { return 2.0 * kPi / wavelength(); }
};

struct RisPanel {
  int nx = 10;
  int nz = 10;
  double dx = 0.0;  // element size along x, m
  double dz = 0.0;  // element size along z, m

  /// Panel of nx * nz elements whose sizes are given in wavelengths.
  static RisPanel in_wavelengths(int nx, int nz, double dx_over_lambda, double dz_over_lambda,
                                 const Carrier& carrier);

  double width() const { return nx * dx; }   // D_x
  double height() const { return nz * dz; }  // D_z

  /// Element counts positive, element sizes in (0, lambda].
  void validate(const Carrier& carrier) const;
};

/// Node in the x-y plane, polar about the RIS centre.
struct NodePlacement {
  double distance = 0.0;  // m
  double angle = 0.0;     // rad from the RIS normal

  static NodePlacement from_cartesian(double x, double y);

  double x() const { return distance * std::sin(angle); }
  double y() const { return distance * std::cos(angle); }
};

struct LinkBudget {
  double bs_gain = db_to_linear(5.0);
  double ue_gain = db_to_linear(5.0);
  double bs_power_w = 0.1;
  double ue_power_w = 0.01;
  double noise_power_w = dbm_to_watt(-94.0);
  double snr_threshold = 1.0;  // linear
  int symbols_per_slot = 100;  // L

  void validate() const;
};

/// Physical setup shared by every drop of a campaign.
struct Scenario {
  Carrier carrier;
  RisPanel panel;
  LinkBudget budget;
  double bs_distance = 25.0;        // d_b, m
  double bs_angle = kPi / 4.0;      // theta_b, rad
  double max_distance = 100.0;      // d_max, m

  /// Reference parameter set: 3 GHz, 10x10 elements of one wavelength,
  /// 5 dB gains, 100 mW / 10 mW, -94 dBm noise, 0 dB threshold,
  /// d_b = 25 m, theta_b = 45 deg, d_max = 100 m.
  static Scenario reference();

  void validate() const;
};

enum class LinkDirection { kDownlink, kUplink };

/// Configuration codebook steering the reflected beam to S directions that
/// slice [0, pi/2] uniformly.
struct Codebook {
  double resolution = 0.0;                  // Delta_S = pi / (2S)
  std::vector<double> directions;           // theta_s, strictly increasing
  std::vector<std::vector<double>> phases;  // phases[s][m - 1], rad

  int size() const { return static_cast<int>(directions.size()); }
  std::span<const double> profile(int s) const { return phases.at(s); }
};

Codebook build_codebook(int config_count, const Carrier& carrier, const RisPanel& panel,
                        double bs_angle);

/// Per-element phase that compensates the BS position and steers to `direction`.
double steering_phase(int m, double direction, double bs_angle, const Carrier& carrier,
                      const RisPanel& panel);

/// A = N_z * sum_m exp(j (omega (sin theta_k - sin theta_b) m d_x + phi(m))).
/// `profile[m - 1]` holds phi(m); its size must equal panel.nx.
Complex array_factor(double ue_angle, double bs_angle, std::span<const double> profile,
                     const RisPanel& panel, const Carrier& carrier);

inline Complex array_factor(double ue_angle, double bs_angle, const Codebook& codebook, int s,
                            const RisPanel& panel, const Carrier& carrier) {
  return array_factor(ue_angle, bs_angle, codebook.profile(s), panel, carrier);
}

/// Closed-form |A| for a linear progressive phase: N_z |sin(N_x u / 2) / sin(u / 2)|
/// with u = omega d_x (sin theta_k - sin theta_s).
double steered_array_gain(double ue_angle, double direction, const RisPanel& panel,
                          const Carrier& carrier);

/// |sin(n u / 2) / sin(u / 2)|, equal to n where u is a multiple of 2 pi.
double dirichlet_magnitude(int n, double u);

/// beta = G_b G_k / (4 pi)^2 (d_x d_z / (d_b d_k))^2 cos^2(theta), where theta is
/// theta_b for the downlink and theta_k for the uplink.
double pathloss(LinkDirection direction, const LinkBudget& budget, const RisPanel& panel,
                double bs_distance, double ue_distance, double bs_angle, double ue_angle);

/// psi_r = -omega (d_b + d_k - (sin theta_b - sin theta_k) (N_x + 1)/2 d_x), unwrapped.
double total_phase(double wavenumber, double bs_distance, double ue_distance, double bs_angle,
                   double ue_angle, const RisPanel& panel);

/// zeta = sqrt(beta) exp(+-j psi_r) A_k(s); + for downlink, - for uplink.
Complex channel_coefficient(LinkDirection direction, const Scenario& scenario,
                            const NodePlacement& ue, const Codebook& codebook, int s);

/// Start of the far-field region, 2 max(D_x^2, D_z^2) / lambda.
double far_field_distance(const RisPanel& panel, const Carrier& carrier);

}  // namespace risra
