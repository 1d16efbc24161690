// SPDX-License-Identifier: Apache-2.0
//
// DL training phase, access policies and UL frame construction.
//
// Configuration / slot indices are 0-based in this API (slot s uses
// codebook configuration s); CSV and console output print them 1-based.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "risra/em_channel.hpp"
#include "risra/pathloss_distribution.hpp"
#include "risra/rng.hpp"

namespace risra {

enum class Policy {
  kStrongest,    // SCP: one packet in the strongest configuration
  kConfigAware,  // CARP: replicas drawn with probability proportional to strength
  kUnaware,      // URP: replicas drawn with probability 1/S, no training
};

std::string_view to_string(Policy policy);
/// Accepts "scp", "carp", "urp" (case-insensitive). Throws std::invalid_argument.
Policy parse_policy(std::string_view name);

inline bool needs_training(Policy policy) { return policy != Policy::kUnaware; }

enum class PlacementModel { kQuarterDisc, kSquare };
std::string_view to_string(PlacementModel model);
PlacementModel parse_placement(std::string_view name);

enum class TrainingMode { kIdeal, kNoisy };
std::string_view to_string(TrainingMode mode);
TrainingMode parse_training(std::string_view name);

struct Drop {
  std::vector<NodePlacement> ues;
  PlacementModel model = PlacementModel::kQuarterDisc;
  std::uint64_t seed = 0;

  int size() const { return static_cast<int>(ues.size()); }
};

/// K UEs uniform by area. Quarter disc: theta in [0, pi/2], distance between
/// the far-field bound and d_max. Square: uniform on `square`, which must lie
/// beyond the far-field bound and inside d_max.
Drop sample_drop(int ue_count, const Scenario& scenario, PlacementModel model,
                 const SquareDeployment& square, Rng& rng);

struct ChannelQualities {
  std::vector<double> strength;  // xi(s), one entry per configuration
  TrainingMode mode = TrainingMode::kIdeal;
};

/// Ideal: xi(s) = L (rho_b |zeta_DL(s)|^2 + sigma^2).
/// Noisy: xi(s) = || sqrt(rho_b) zeta_DL(s) v + eta ||^2 with v = 1 (unit-power
/// symbols) and eta ~ CN(0, sigma^2 I_L).
std::vector<ChannelQualities> run_training(const Drop& drop, const Codebook& codebook,
                                           const Scenario& scenario, TrainingMode mode, Rng& rng);

struct SlotSelection {
  std::vector<int> slots;  // ascending, nonempty
  Policy policy = Policy::kStrongest;

  bool contains(int s) const;
};

/// SCP picks argmax xi (lowest index on ties). CARP and URP toss one coin per
/// slot and redraw the whole selection while it is empty. URP ignores
/// `strength` apart from its length.
SlotSelection select_slots(Policy policy, std::span<const double> strength, Rng& rng);

/// Selection probabilities used by the coin tosses: xi(s) / sum xi for CARP, 1/S for URP.
std::vector<double> inclusion_probabilities(Policy policy, std::span<const double> strength);

struct FrameTerm {
  int ue = 0;
  Complex coefficient;  // sqrt(rho_k) zeta_UL(s)
};

struct SlotLedger {
  std::vector<FrameTerm> terms;
  double noise = 0.0;  // accumulated noise variance

  const FrameTerm* find(int ue) const;
};

/// Symbolic content of the buffered UL slots.
struct UplinkFrame {
  std::vector<SlotLedger> slots;
  int symbols_per_slot = 1;

  int slot_count() const { return static_cast<int>(slots.size()); }
};

UplinkFrame build_uplink_frame(const Drop& drop, std::span<const SlotSelection> selections,
                               const Codebook& codebook, const Scenario& scenario);

struct TimingModel {
  double slot = 1.0;    // T
  double config = 1.0;  // T_config

  void validate() const;
  /// S (T + T_config), the length of one training or access phase.
  double phase(int config_count) const;
};

/// S (T + T_config), doubled when the training phase is included.
double phase_durations(int config_count, const TimingModel& timing, bool include_training);
double phase_durations(int config_count, double slot, double config, bool include_training);

}  // namespace risra
