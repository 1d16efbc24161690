// SPDX-License-Identifier: Apache-2.0
#include "risra/em_channel.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace risra {

Carrier Carrier::from_frequency(double frequency_hz) {
  if (!(frequency_hz > 0.0)) throw std::invalid_argument("carrier frequency must be positive");
  return Carrier{frequency_hz, kSpeedOfLight};
}

RisPanel RisPanel::in_wavelengths(int nx, int nz, double dx_over_lambda, double dz_over_lambda,
                                  const Carrier& carrier) {
  const double lambda = carrier.wavelength();
  RisPanel panel{nx, nz, dx_over_lambda * lambda, dz_over_lambda * lambda};
  panel.validate(carrier);
  return panel;
}

void RisPanel::validate(const Carrier& carrier) const {
  if (nx < 1 || nz < 1) throw std::invalid_argument("RIS element counts must be positive");
  const double lambda = carrier.wavelength();
  // Sizes given as multiples of lambda land a few ulps above it.
  const double limit = lambda * (1.0 + 1e-12);
  if (!(dx > 0.0) || !(dz > 0.0) || dx > limit || dz > limit) {
    throw std::invalid_argument("RIS element sizes must lie in (0, lambda]");
  }
}

NodePlacement NodePlacement::from_cartesian(double x, double y) {
  const double d = std::hypot(x, y);
  if (!(d > 0.0)) throw std::invalid_argument("node cannot sit at the RIS centre");
  return NodePlacement{d, std::atan2(x, y)};
}

void LinkBudget::validate() const {
  if (!(bs_gain > 0.0) || !(ue_gain > 0.0) || !(bs_power_w > 0.0) || !(ue_power_w > 0.0) ||
      !(noise_power_w > 0.0) || !(snr_threshold > 0.0)) {
    throw std::invalid_argument("link budget quantities must be strictly positive");
  }
  if (symbols_per_slot < 1) throw std::invalid_argument("symbols per slot must be >= 1");
}

Scenario Scenario::reference() {
  Scenario s;
  s.carrier = Carrier::from_frequency(3e9);
  s.panel = RisPanel::in_wavelengths(10, 10, 1.0, 1.0, s.carrier);
  return s;
}

void Scenario::validate() const {
  panel.validate(carrier);
  budget.validate();
  if (!(bs_distance > 0.0)) throw std::invalid_argument("BS distance must be positive");
  if (bs_angle < 0.0 || bs_angle > kPi / 2.0) {
    throw std::invalid_argument("BS angle must lie in [0, pi/2]");
  }
  if (!(max_distance > 0.0)) throw std::invalid_argument("maximum distance must be positive");
}

double steering_phase(int m, double direction, double bs_angle, const Carrier& carrier,
                      const RisPanel& panel) {
  return carrier.wavenumber() * m * panel.dx * (std::sin(bs_angle) - std::sin(direction));
}

Codebook build_codebook(int config_count, const Carrier& carrier, const RisPanel& panel,
                        double bs_angle) {
  if (config_count < 1) throw std::invalid_argument("codebook needs at least one configuration");
  if (bs_angle < 0.0 || bs_angle > kPi / 2.0) {
    throw std::invalid_argument("BS angle must lie in [0, pi/2]");
  }
  Codebook book;
  book.resolution = kPi / (2.0 * config_count);
  book.directions.reserve(config_count);
  book.phases.reserve(config_count);
  for (int s = 0; s < config_count; ++s) {
    const double direction = book.resolution / 2.0 + s * book.resolution;
    std::vector<double> profile(panel.nx);
    for (int m = 1; m <= panel.nx; ++m) {
      profile[m - 1] = steering_phase(m, direction, bs_angle, carrier, panel);
    }
    book.directions.push_back(direction);
    book.phases.push_back(std::move(profile));
  }
  return book;
}

Complex array_factor(double ue_angle, double bs_angle, std::span<const double> profile,
                     const RisPanel& panel, const Carrier& carrier) {
  if (static_cast<int>(profile.size()) != panel.nx) {
    throw std::invalid_argument("phase profile length " + std::to_string(profile.size()) +
                                " does not match N_x = " + std::to_string(panel.nx));
  }
  const double progression =
      carrier.wavenumber() * (std::sin(ue_angle) - std::sin(bs_angle)) * panel.dx;
  Complex sum{0.0, 0.0};
  for (int m = 1; m <= panel.nx; ++m) {
    sum += unit_phasor(progression * m + profile[m - 1]);
  }
  return static_cast<double>(panel.nz) * sum;
}

double dirichlet_magnitude(int n, double u) {
  const double half = std::sin(u / 2.0);
  if (std::abs(half) < 1e-12) return static_cast<double>(n);
  return std::abs(std::sin(n * u / 2.0) / half);
}

double steered_array_gain(double ue_angle, double direction, const RisPanel& panel,
                          const Carrier& carrier) {
  const double u = carrier.wavenumber() * panel.dx * (std::sin(ue_angle) - std::sin(direction));
  return panel.nz * dirichlet_magnitude(panel.nx, u);
}

double pathloss(LinkDirection direction, const LinkBudget& budget, const RisPanel& panel,
                double bs_distance, double ue_distance, double bs_angle, double ue_angle) {
  if (!(bs_distance > 0.0) || !(ue_distance > 0.0)) {
    throw std::invalid_argument("pathloss needs strictly positive distances");
  }
  const double angle = direction == LinkDirection::kDownlink ? bs_angle : ue_angle;
  const double cosine = std::cos(angle);
  const double aperture = panel.dx * panel.dz / (bs_distance * ue_distance);
  return budget.bs_gain * budget.ue_gain / ((4.0 * kPi) * (4.0 * kPi)) * aperture * aperture *
         cosine * cosine;
}

double total_phase(double wavenumber, double bs_distance, double ue_distance, double bs_angle,
                   double ue_angle, const RisPanel& panel) {
  return -wavenumber * (bs_distance + ue_distance -
                        (std::sin(bs_angle) - std::sin(ue_angle)) * (panel.nx + 1) / 2.0 * panel.dx);
}

Complex channel_coefficient(LinkDirection direction, const Scenario& scenario,
                            const NodePlacement& ue, const Codebook& codebook, int s) {
  const double beta = pathloss(direction, scenario.budget, scenario.panel, scenario.bs_distance,
                               ue.distance, scenario.bs_angle, ue.angle);
  const double psi = total_phase(scenario.carrier.wavenumber(), scenario.bs_distance, ue.distance,
                                 scenario.bs_angle, ue.angle, scenario.panel);
  const double sign = direction == LinkDirection::kDownlink ? 1.0 : -1.0;
  const Complex af =
      array_factor(ue.angle, scenario.bs_angle, codebook, s, scenario.panel, scenario.carrier);
  return std::sqrt(beta) * unit_phasor(sign * psi) * af;
}

double far_field_distance(const RisPanel& panel, const Carrier& carrier) {
  const double dx = panel.width();
  const double dz = panel.height();
  return 2.0 * std::max(dx * dx, dz * dz) / carrier.wavelength();
}

}  // namespace risra
