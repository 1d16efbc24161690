// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo campaign over (policy, K, S, drop).
//
// Randomness comes from two substreams per drop. UE placement is keyed by
// (seed, K, drop) so every policy and codebook size sees the same UEs;
// training noise and coin tosses are keyed by (seed, policy, K, S, drop).
// Any subset of the grid therefore reproduces bit for bit.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "risra/em_channel.hpp"
#include "risra/pathloss_distribution.hpp"
#include "risra/protocol.hpp"
#include "risra/sic.hpp"

namespace risra {

struct CampaignConfig {
  Scenario scenario = Scenario::reference();
  TimingModel timing;
  std::vector<Policy> policies{Policy::kStrongest, Policy::kConfigAware, Policy::kUnaware};
  std::vector<int> ue_counts;      // K sweep, defaults to 1..50
  std::vector<int> config_counts{2, 4, 8};
  int drops = 2000;
  std::uint64_t seed = 1;
  PlacementModel placement = PlacementModel::kQuarterDisc;
  SquareDeployment square{15.0, 50.0};
  TrainingMode training = TrainingMode::kIdeal;
  FailedDecodeRule on_failure = FailedDecodeRule::kDropEdges;
  std::string output = "results.csv";
  bool trace = false;
  int workers = 1;

  CampaignConfig();

  /// Throws std::invalid_argument on empty sweeps, drops < 1, K < 0, S < 1,
  /// workers < 1 or an invalid scenario.
  void validate() const;
};

struct ResultRow {
  Policy policy = Policy::kStrongest;
  int ue_count = 0;      // K
  int config_count = 0;  // S
  int drop = 0;
  int sa = 0;
  double duration_slots = 0.0;
  double throughput = 0.0;  // packet/slot
};

struct TraceRow {
  Policy policy = Policy::kStrongest;
  int ue_count = 0;
  int config_count = 0;
  int drop = 0;
  PeelingStep step;
};

struct CampaignResult {
  std::vector<ResultRow> rows;   // ordered by (policy, K, S) as configured, then drop
  std::vector<TraceRow> trace;   // filled only when config.trace is set
};

/// SA / (2 S (T + T_config)) for SCP and CARP, SA / (S (T + T_config)) for URP.
/// Throws std::invalid_argument for S < 1 or SA < 0.
double compute_throughput(int sa, int config_count, double slot, double config, Policy policy);

std::uint64_t placement_stream_id(std::uint64_t seed, int ue_count, int drop);
std::uint64_t protocol_stream_id(std::uint64_t seed, Policy policy, int ue_count,
                                 int config_count, int drop);

/// One drop end to end: place UEs, train, select, build the frame, resolve.
ResolutionOutcome run_drop(const CampaignConfig& config, const Codebook& codebook, Policy policy,
                           int ue_count, int drop);

CampaignResult run_campaign(const CampaignConfig& config);

}  // namespace risra
