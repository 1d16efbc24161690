// SPDX-License-Identifier: Apache-2.0
#include "risra/scattering.hpp"

#include <stdexcept>

namespace risra {

namespace {

constexpr Complex kJ{0.0, 1.0};

double in_plane_cos_sin(const SphericalPoint& p) { return std::cos(p.phi) * std::sin(p.theta); }

// j exp(-j omega (r_D + r_S)) / (lambda r_D) sin(phi_S) sin(theta_D)
Complex common_factor(const SphericalLink& link) {
  return kJ * unit_phasor(-link.wavenumber * (link.destination.radius + link.source.radius)) /
         (link.wavelength() * link.destination.radius) * std::sin(link.source.phi) *
         std::sin(link.destination.theta);
}

}  // namespace

double SphericalLink::wavenumber_x() const {
  return wavenumber * (in_plane_cos_sin(source) + in_plane_cos_sin(destination));
}

double SphericalLink::wavenumber_z() const {
  return wavenumber * (std::cos(source.theta) + std::cos(destination.theta));
}

ElementPhases ElementPhases::from_profile(std::span<const double> profile, int nz) {
  ElementPhases phases(static_cast<int>(profile.size()), nz);
  for (int m = 1; m <= phases.nx(); ++m) {
    for (int n = 1; n <= nz; ++n) phases(m, n) = profile[m - 1];
  }
  return phases;
}

ElementPhases ElementPhases::separable_linear(const RisPanel& panel, double wavenumber,
                                              double phi_x, double phi_z) {
  ElementPhases phases(panel.nx, panel.nz);
  for (int m = 1; m <= panel.nx; ++m) {
    for (int n = 1; n <= panel.nz; ++n) {
      phases(m, n) = wavenumber * phi_x * m * panel.dx + wavenumber * phi_z * n * panel.dz;
    }
  }
  return phases;
}

double continuous_phase_profile(const SphericalLink& link, const ReflectionDirection& reflection,
                                double x, double z) {
  const SphericalPoint& s = link.source;
  return link.wavenumber *
         (-x * (std::cos(s.phi) * std::sin(s.theta) +
                std::cos(reflection.phi) * std::sin(reflection.theta)) -
          z * (std::cos(reflection.theta) + std::cos(s.theta)));
}

Complex continuous_plate_field(const SphericalLink& link, const ReflectionDirection& reflection,
                               double width, double height) {
  const SphericalPoint& d = link.destination;
  const double x_arg = link.wavenumber * width / 2.0 *
                       (std::sin(d.theta) * std::cos(d.phi) -
                        std::sin(reflection.theta) * std::cos(reflection.phi));
  const double z_arg =
      link.wavenumber * height / 2.0 * (std::cos(d.theta) - std::cos(reflection.theta));
  return common_factor(link) * width * height * sinc(x_arg) * sinc(z_arg);
}

double continuous_plate_pathloss(const SphericalLink& link, const ReflectionDirection& reflection,
                                 double width, double height, double source_gain,
                                 double destination_gain) {
  return field_pathloss(continuous_plate_field(link, reflection, width, height), link, source_gain,
                        destination_gain);
}

Complex discrete_array_factor(const SphericalLink& link, const RisPanel& panel,
                              const ElementPhases& phases) {
  if (phases.nx() != panel.nx || phases.nz() != panel.nz) {
    throw std::invalid_argument("element phase map does not match the panel");
  }
  const double kx = link.wavenumber_x() * panel.dx;
  const double kz = link.wavenumber_z() * panel.dz;
  Complex sum{0.0, 0.0};
  for (int m = 1; m <= panel.nx; ++m) {
    for (int n = 1; n <= panel.nz; ++n) {
      sum += unit_phasor(phases(m, n) + kx * m + kz * n);
    }
  }
  return sum;
}

Complex separable_array_factor(const SphericalLink& link, const RisPanel& panel, double phi_x,
                               double phi_z) {
  // Geometric series in each axis, written as phase centre times Dirichlet ratio.
  auto axis = [](int n, double u) {
    const double half = std::sin(u / 2.0);
    const double ratio = std::abs(half) < 1e-12
                             ? n * std::cos(n * u / 2.0) / std::cos(u / 2.0)
                             : std::sin(n * u / 2.0) / half;
    return unit_phasor((n + 1) * u / 2.0) * ratio;
  };
  const double ux = (link.wavenumber * phi_x + link.wavenumber_x()) * panel.dx;
  const double uz = (link.wavenumber * phi_z + link.wavenumber_z()) * panel.dz;
  return axis(panel.nx, ux) * axis(panel.nz, uz);
}

Complex discrete_scattered_field(const SphericalLink& link, const RisPanel& panel,
                                 const ElementPhases& phases) {
  const double wx = link.wavenumber_x();
  const double wz = link.wavenumber_z();
  const Complex element = panel.dx * panel.dz * sinc(panel.dx * wx / 2.0) *
                          sinc(panel.dz * wz / 2.0) *
                          unit_phasor(-wx * panel.dx * (panel.nx + 1) / 2.0) *
                          unit_phasor(-wz * panel.dz * (panel.nz + 1) / 2.0);
  return common_factor(link) * element * discrete_array_factor(link, panel, phases);
}

double element_pathloss(const SphericalLink& link, const RisPanel& panel, double source_gain,
                        double destination_gain) {
  const double wx = link.wavenumber_x();
  const double wz = link.wavenumber_z();
  const Complex element = common_factor(link) * panel.dx * panel.dz * sinc(panel.dx * wx / 2.0) *
                          sinc(panel.dz * wz / 2.0);
  return field_pathloss(element, link, source_gain, destination_gain);
}

double field_pathloss(Complex field, const SphericalLink& link, double source_gain,
                      double destination_gain) {
  // |E_i|^2 / (2 eta) = P_S G_S / (4 pi r_S^2), effective area lambda^2 G_D / (4 pi).
  const double lambda = link.wavelength();
  const double r_s = link.source.radius;
  return std::norm(field) * source_gain * destination_gain * lambda * lambda /
         ((4.0 * kPi) * (4.0 * kPi) * r_s * r_s);
}

double source_to_element_phase(const SphericalLink& link, const RisPanel& panel, int m) {
  return -link.wavenumber * (link.source.radius - in_plane_cos_sin(link.source) *
                                                      (m - (panel.nx + 1) / 2.0) * panel.dx);
}

double element_to_destination_phase(const SphericalLink& link, const RisPanel& panel, int m) {
  return -link.wavenumber * (link.destination.radius - in_plane_cos_sin(link.destination) *
                                                           (m - (panel.nx + 1) / 2.0) * panel.dx);
}

ReflectionDirection specular_reflection(const SphericalLink& link) {
  return {kPi - link.source.theta, kPi - link.source.phi};
}

SphericalLink downlink_link(double bs_angle, double ue_angle, double bs_distance,
                            double ue_distance, double wavenumber) {
  return SphericalLink{{bs_distance, kPi / 2.0, bs_angle + kPi / 2.0},
                       {ue_distance, kPi / 2.0, kPi / 2.0 - ue_angle},
                       wavenumber};
}

SphericalLink uplink_link(double bs_angle, double ue_angle, double bs_distance, double ue_distance,
                          double wavenumber) {
  return SphericalLink{{ue_distance, kPi / 2.0, kPi / 2.0 - ue_angle},
                       {bs_distance, kPi / 2.0, bs_angle + kPi / 2.0},
                       wavenumber};
}

ReflectionDirection downlink_reflection(double direction) {
  return {kPi / 2.0, kPi / 2.0 - direction};
}

ReflectionDirection uplink_reflection(double direction) {
  return {kPi / 2.0, direction + kPi / 2.0};
}

}  // namespace risra
