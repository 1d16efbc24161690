// SPDX-License-Identifier: Apache-2.0
//
// Physical-optics scattered field of a RIS lying in the x-z plane (normal
// along y) for arbitrary source/destination directions. The simulator itself
// runs on the in-plane formulas of em_channel.hpp; this engine is the general
// reference they are checked against.
//
// Fields are returned normalised by the incident amplitude E_i, i.e. as
// E_theta / E_i at the destination, TM^z polarisation.
#pragma once

#include <vector>

#include "risra/em_channel.hpp"
#include "risra/units.hpp"

namespace risra {

/// Spherical coordinates about the RIS centre: polar angle theta from +z,
/// azimuth phi from +x.
struct SphericalPoint {
  double radius = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

struct SphericalLink {
  SphericalPoint source;
  SphericalPoint destination;
  double wavenumber = 0.0;

  double wavelength() const { return 2.0 * kPi / wavenumber; }
  /// omega (cos phi_S sin theta_S + cos phi_D sin theta_D)
  double wavenumber_x() const;
  /// omega (cos theta_S + cos theta_D)
  double wavenumber_z() const;
};

struct ReflectionDirection {
  double theta = 0.0;
  double phi = 0.0;
};

/// Per-element phase shifts phi(m, n), m = 1..nx, n = 1..nz.
class ElementPhases {
 public:
  ElementPhases(int nx, int nz, double value = 0.0) : nx_(nx), nz_(nz), values_(nx * nz, value) {}

  /// Profile that only varies along x, phi(m, n) = profile[m - 1].
  static ElementPhases from_profile(std::span<const double> profile, int nz);
  /// phi(m, n) = omega phi_x m d_x + omega phi_z n d_z.
  static ElementPhases separable_linear(const RisPanel& panel, double wavenumber, double phi_x,
                                        double phi_z);

  int nx() const { return nx_; }
  int nz() const { return nz_; }
  double operator()(int m, int n) const { return values_[(m - 1) * nz_ + (n - 1)]; }
  double& operator()(int m, int n) { return values_[(m - 1) * nz_ + (n - 1)]; }

 private:
  int nx_;
  int nz_;
  std::vector<double> values_;
};

/// Continuous phase-shift density that scatters the incident wave toward
/// `reflection`, evaluated on the plate (y = 0).
double continuous_phase_profile(const SphericalLink& link, const ReflectionDirection& reflection,
                                double x, double z);

/// E_theta / E_i of a continuous plate of size D_x x D_z designed for `reflection`.
Complex continuous_plate_field(const SphericalLink& link, const ReflectionDirection& reflection,
                               double width, double height);

double continuous_plate_pathloss(const SphericalLink& link, const ReflectionDirection& reflection,
                                 double width, double height, double source_gain,
                                 double destination_gain);

/// sum_m sum_n exp(j phi(m,n)) exp(j omega_x m d_x) exp(j omega_z n d_z).
Complex discrete_array_factor(const SphericalLink& link, const RisPanel& panel,
                              const ElementPhases& phases);

/// Closed form of discrete_array_factor for ElementPhases::separable_linear.
Complex separable_array_factor(const SphericalLink& link, const RisPanel& panel, double phi_x,
                               double phi_z);

/// E_theta / E_i of the element-wise RIS: element factor, fixed phase terms
/// and the array factor.
Complex discrete_scattered_field(const SphericalLink& link, const RisPanel& panel,
                                 const ElementPhases& phases);

/// Pathloss of a single element scaled to the panel, i.e. the discrete field
/// power with the array factor removed.
double element_pathloss(const SphericalLink& link, const RisPanel& panel, double source_gain,
                        double destination_gain);

/// Power ratio P_D / P_S carried by a normalised field E_theta / E_i.
double field_pathloss(Complex field, const SphericalLink& link, double source_gain,
                      double destination_gain);

/// Far-field phase from the source to the centre of element m (x-axis only).
double source_to_element_phase(const SphericalLink& link, const RisPanel& panel, int m);
/// Far-field phase from the centre of element m to the destination.
double element_to_destination_phase(const SphericalLink& link, const RisPanel& panel, int m);

/// Direction for which the continuous design phase vanishes everywhere:
/// (pi - theta_S, pi - phi_S).
ReflectionDirection specular_reflection(const SphericalLink& link);

/// In-plane maps from the scenario angles (measured from the RIS normal) to
/// spherical coordinates. All three polar angles are pi/2.
SphericalLink downlink_link(double bs_angle, double ue_angle, double bs_distance,
                            double ue_distance, double wavenumber);
SphericalLink uplink_link(double bs_angle, double ue_angle, double bs_distance, double ue_distance,
                          double wavenumber);
ReflectionDirection downlink_reflection(double direction);
ReflectionDirection uplink_reflection(double direction);

}  // namespace risra
