// SPDX-License-Identifier: Apache-2.0
//
// YAML campaign files. Every section is optional; keys inside a section are
// flat scalars (or lists for the sweeps):
//
//   carrier:  fc_hz
//   geometry: d_b_m, theta_b_deg, d_max_m
//   ris:      Nx, Nz, dx_over_lambda, dz_over_lambda
//   link:     G_b_db, G_k_db, rho_b_w, rho_k_w, sigma2_dbm, gamma_th_db, L
//   timing:   T, T_config
//   campaign: policies, k, s, drops, seed, placement, square_offset_m,
//             square_side_m, training, on_failure, output, trace, workers
//
// Unknown sections or keys are rejected.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "risra/campaign.hpp"

namespace risra {

/// Malformed configuration. line is 1-based, 0 when not tied to a location.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line, std::string key);

  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

CampaignConfig parse_config(std::string_view text);
CampaignConfig load_config(const std::string& path);

/// "a:b" (inclusive), "a:b:step", "a,b,c" or a single integer.
/// Throws ConfigError with key `name`.
std::vector<int> parse_int_sweep(std::string_view text, std::string_view name);

/// Comma-separated policy names.
std::vector<Policy> parse_policy_list(std::string_view text);

FailedDecodeRule parse_failed_decode(std::string_view name);
std::string_view to_string(FailedDecodeRule rule);

}  // namespace risra
