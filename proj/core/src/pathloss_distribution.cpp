// SPDX-License-Identifier: Apache-2.0
#include "risra/pathloss_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace risra {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_sqrt(double x) { return std::sqrt(std::max(0.0, x)); }
double safe_asin(double x) { return std::asin(std::clamp(x, -1.0, 1.0)); }

void check_inputs(double beta, double omega, const SquareDeployment& deployment) {
  if (!(beta > 0.0)) throw std::invalid_argument("pathloss value must be positive");
  if (!(omega > 0.0)) throw std::invalid_argument("pathloss constant must be positive");
  deployment.validate();
}

// --- uplink ---------------------------------------------------------------
//
// With c = sqrt(beta / Omega) the event beta_UL <= beta reads y / (x^2 + y^2) <= c.
// Every case has the shape F = F0 - G(c) / (8 c^2 l^2); the density follows as
// f = Omega (2 G - c G') / (16 l^2 beta^2).

struct UlTerms {
  double offset;  // F0
  double g;       // G(c)
  double dg;      // G'(c)
};

// 2 sqrt(p (1 - p)) (1 - 2p) - asin(2 sqrt(p (1 - p))) with p = c u, p <= 1/2.
double near_term(double c, double u) {
  const double p = c * u;
  const double root = 2.0 * safe_sqrt(p * (1.0 - p));
  return root * (1.0 - 2.0 * p) - safe_asin(root);
}
double near_term_derivative(double c, double u) {
  const double p = c * u;
  return -8.0 * u * safe_sqrt(p * (1.0 - p));
}

UlTerms ul_terms(double c, double near, double far, double side) {
  const double hn = near_term(c, near);
  const double dhn = near_term_derivative(c, near);
  if (c <= 1.0 / (2.0 * far)) {
    const double q = 2.0 * c * far;
    const double root = safe_sqrt(1.0 - q * q);
    return {-near * far / (side * side), q * (root - 2.0) + safe_asin(q) + hn,
            4.0 * far * (root - 1.0) + dhn};
  }
  if (c <= far / (near * near + far * far)) {
    const double p = c * far;
    const double root = 2.0 * safe_sqrt(p * (1.0 - p));
    return {1.0 + near / side, kPi + hn - (root * (1.0 - 2.0 * p) + safe_asin(root)),
            dhn + 8.0 * far * safe_sqrt(p * (1.0 - p))};
  }
  const double q = 2.0 * c * near;
  const double root = safe_sqrt(1.0 - q * q);
  return {1.0 - near * near / (side * side), -q * (2.0 + root) + hn + kPi - safe_asin(q),
          -4.0 * near * (1.0 + root) + dhn};
}

}  // namespace

void SquareDeployment::validate() const {
  if (!(offset >= 0.0) || !(side > 0.0)) {
    throw std::invalid_argument("deployment square needs offset >= 0 and side > 0");
  }
}

Position sample_ue_position(const SquareDeployment& deployment, Rng& rng) {
  std::uniform_real_distribution<double> coord(deployment.near_edge(), deployment.far_edge());
  const double x = coord(rng);
  const double y = coord(rng);
  return {x, y};
}

double pathloss_constant(const LinkBudget& budget, const RisPanel& panel, double bs_distance) {
  if (!(bs_distance > 0.0)) throw std::invalid_argument("BS distance must be positive");
  const double area = panel.dx * panel.dz / bs_distance;
  return budget.bs_gain * budget.ue_gain / ((4.0 * kPi) * (4.0 * kPi)) * area * area;
}

double dl_pathloss_at(const Position& p, double omega, double bs_angle) {
  const double cb = std::cos(bs_angle);
  return omega * cb * cb / (p.x * p.x + p.y * p.y);
}

double ul_pathloss_at(const Position& p, double omega) {
  const double d2 = p.x * p.x + p.y * p.y;
  return omega * p.y * p.y / (d2 * d2);
}

Support dl_pathloss_support(double omega, double bs_angle, const SquareDeployment& deployment) {
  const double k = omega * std::cos(bs_angle) * std::cos(bs_angle);
  const double a = deployment.near_edge();
  const double b = deployment.far_edge();
  return {k / (2.0 * b * b), a > 0.0 ? k / (2.0 * a * a) : kInf};
}

Support ul_pathloss_support(double omega, const SquareDeployment& deployment) {
  const double a = deployment.near_edge();
  const double b = deployment.far_edge();
  const double s = a * a + b * b;
  return {omega * a * a / (s * s), a > 0.0 ? omega / (4.0 * a * a) : kInf};
}

std::array<double, 1> dl_case_seams(double omega, double bs_angle,
                                    const SquareDeployment& deployment) {
  const double k = omega * std::cos(bs_angle) * std::cos(bs_angle);
  const double a = deployment.near_edge();
  const double b = deployment.far_edge();
  return {k / (a * a + b * b)};
}

std::array<double, 2> ul_case_seams(double omega, const SquareDeployment& deployment) {
  const double a = deployment.near_edge();
  const double b = deployment.far_edge();
  const double s = a * a + b * b;
  return {omega / (4.0 * b * b), omega * b * b / (s * s)};
}

double dl_pathloss_cdf(double beta, double omega, double bs_angle,
                       const SquareDeployment& deployment) {
  check_inputs(beta, omega, deployment);
  const double k = omega * std::cos(bs_angle) * std::cos(bs_angle);
  if (!(k > 0.0)) return 1.0;  // theta_b = pi/2: beta_DL is identically zero
  const double a = deployment.near_edge();
  const double b = deployment.far_edge();
  const double l = deployment.side;
  const Support support = dl_pathloss_support(omega, bs_angle, deployment);
  if (beta < support.lower) return 0.0;
  if (beta > support.upper) return 1.0;

  // Pr{x^2 + y^2 >= r^2}
  const double r2 = k / beta;
  if (beta <= k / (a * a + b * b)) {
    const double x0 = safe_sqrt(r2 - b * b);
    return (b * b - b * x0 - r2 / 2.0 * std::atan2(2.0 * b * b - r2, 2.0 * b * x0)) / (l * l);
  }
  const double x1 = safe_sqrt(r2 - a * a);
  return (l * l - a * a + a * x1 + r2 / 2.0 * std::atan2(2.0 * a * a - r2, 2.0 * a * x1)) /
         (l * l);
}

double dl_pathloss_pdf(double beta, double omega, double bs_angle,
                       const SquareDeployment& deployment) {
  check_inputs(beta, omega, deployment);
  const double k = omega * std::cos(bs_angle) * std::cos(bs_angle);
  if (!(k > 0.0)) return 0.0;
  const double a = deployment.near_edge();
  const double b = deployment.far_edge();
  const double l = deployment.side;
  const Support support = dl_pathloss_support(omega, bs_angle, deployment);
  if (beta < support.lower || beta > support.upper) return 0.0;

  // Angular span of the circle of radius r inside the square.
  const double r2 = k / beta;
  double span = 0.0;
  if (beta <= k / (a * a + b * b)) {
    span = std::atan2(2.0 * b * b - r2, 2.0 * b * safe_sqrt(r2 - b * b));
  } else {
    span = -std::atan2(2.0 * a * a - r2, 2.0 * a * safe_sqrt(r2 - a * a));
  }
  return k / (2.0 * l * l * beta * beta) * span;
}

double ul_pathloss_cdf(double beta, double omega, const SquareDeployment& deployment) {
  check_inputs(beta, omega, deployment);
  const Support support = ul_pathloss_support(omega, deployment);
  if (beta <= support.lower) return 0.0;
  if (beta > support.upper) return 1.0;
  const double c = std::sqrt(beta / omega);
  const double l = deployment.side;
  const UlTerms t = ul_terms(c, deployment.near_edge(), deployment.far_edge(), l);
  return std::clamp(t.offset - t.g / (8.0 * c * c * l * l), 0.0, 1.0);
}

double ul_pathloss_pdf(double beta, double omega, const SquareDeployment& deployment) {
  check_inputs(beta, omega, deployment);
  const Support support = ul_pathloss_support(omega, deployment);
  if (beta <= support.lower || beta > support.upper) return 0.0;
  const double c = std::sqrt(beta / omega);
  const double l = deployment.side;
  const UlTerms t = ul_terms(c, deployment.near_edge(), deployment.far_edge(), l);
  return std::max(0.0, omega * (2.0 * t.g - c * t.dg) / (16.0 * l * l * beta * beta));
}

std::vector<double> sample_pathloss(LinkDirection direction, std::size_t count, double omega,
                                    double bs_angle, const SquareDeployment& deployment, Rng& rng) {
  deployment.validate();
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Position p = sample_ue_position(deployment, rng);
    out.push_back(direction == LinkDirection::kDownlink ? dl_pathloss_at(p, omega, bs_angle)
                                                        : ul_pathloss_at(p, omega));
  }
  return out;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double value) const {
  if (sorted_.empty()) return 0.0;
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), value);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::ks_distance(const std::function<double(double)>& cdf) const {
  const double n = static_cast<double>(sorted_.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted_.size(); ++i) {
    const double f = cdf(sorted_[i]);
    worst = std::max({worst, std::abs(f - static_cast<double>(i) / n),
                      std::abs(static_cast<double>(i + 1) / n - f)});
  }
  return worst;
}

}  // namespace risra
