// SPDX-License-Identifier: Apache-2.0
//
// Distribution of the DL and UL pathloss when the UE is uniform on the square
// [l0, l0 + l] x [l0, l0 + l]. With Omega = G_b G_k (d_x d_z)^2 / (4 pi)^2 / d_b^2
// (or any other positive aggregate constant):
//
//   beta_DL = Omega cos^2(theta_b) / d_k^2
//   beta_UL = Omega cos^2(theta_k) / d_k^2 = Omega y^2 / (x^2 + y^2)^2
#pragma once

#include <array>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "risra/em_channel.hpp"
#include "risra/rng.hpp"

namespace risra {

struct SquareDeployment {
  double offset = 0.0;  // l0, m
  double side = 1.0;    // l, m

  double near_edge() const { return offset; }
  double far_edge() const { return offset + side; }
  void validate() const;
};

struct Position {
  double x = 0.0;
  double y = 0.0;
};

/// Uniform draw from the deployment square.
Position sample_ue_position(const SquareDeployment& deployment, Rng& rng);

/// Omega for a given BS distance: G_b G_k (d_x d_z)^2 / ((4 pi)^2 d_b^2).
double pathloss_constant(const LinkBudget& budget, const RisPanel& panel, double bs_distance);

double dl_pathloss_at(const Position& p, double omega, double bs_angle);
double ul_pathloss_at(const Position& p, double omega);

struct Support {
  double lower = 0.0;
  double upper = 0.0;  // may be +inf when l0 = 0
};

Support dl_pathloss_support(double omega, double bs_angle, const SquareDeployment& deployment);
Support ul_pathloss_support(double omega, const SquareDeployment& deployment);

/// Interior seams between the piecewise cases, ascending.
std::array<double, 1> dl_case_seams(double omega, double bs_angle,
                                    const SquareDeployment& deployment);
std::array<double, 2> ul_case_seams(double omega, const SquareDeployment& deployment);

/// Pr{beta_DL <= beta}. Throws std::invalid_argument for beta <= 0.
double dl_pathloss_cdf(double beta, double omega, double bs_angle,
                       const SquareDeployment& deployment);
double dl_pathloss_pdf(double beta, double omega, double bs_angle,
                       const SquareDeployment& deployment);

/// Pr{beta_UL <= beta}. Throws std::invalid_argument for beta <= 0.
double ul_pathloss_cdf(double beta, double omega, const SquareDeployment& deployment);
double ul_pathloss_pdf(double beta, double omega, const SquareDeployment& deployment);

/// `count` pathloss draws for UEs uniform on the deployment square.
std::vector<double> sample_pathloss(LinkDirection direction, std::size_t count, double omega,
                                    double bs_angle, const SquareDeployment& deployment, Rng& rng);

/// Empirical CDF over a sample set.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);

  double operator()(double value) const;
  std::size_t size() const { return sorted_.size(); }

  /// sup |F_emp - F| evaluated on both sides of every jump.
  double ks_distance(const std::function<double(double)>& cdf) const;

 private:
  std::vector<double> sorted_;
};

}  // namespace risra
