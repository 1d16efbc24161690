// SPDX-License-Identifier: Apache-2.0
#include "risra/protocol.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace risra {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view to_string(Policy policy) {
  switch (policy) {
    case Policy::kStrongest: return "scp";
    case Policy::kConfigAware: return "carp";
    case Policy::kUnaware: return "urp";
  }
  return "?";
}

Policy parse_policy(std::string_view name) {
  const std::string key = lower(name);
  if (key == "scp") return Policy::kStrongest;
  if (key == "carp") return Policy::kConfigAware;
  if (key == "urp") return Policy::kUnaware;
  throw std::invalid_argument("unknown access policy '" + std::string(name) + "'");
}

std::string_view to_string(PlacementModel model) {
  return model == PlacementModel::kQuarterDisc ? "quarter_disc" : "square";
}

PlacementModel parse_placement(std::string_view name) {
  const std::string key = lower(name);
  if (key == "quarter_disc") return PlacementModel::kQuarterDisc;
  if (key == "square") return PlacementModel::kSquare;
  throw std::invalid_argument("unknown placement model '" + std::string(name) + "'");
}

std::string_view to_string(TrainingMode mode) {
  return mode == TrainingMode::kIdeal ? "ideal" : "noisy";
}

TrainingMode parse_training(std::string_view name) {
  const std::string key = lower(name);
  if (key == "ideal") return TrainingMode::kIdeal;
  if (key == "noisy") return TrainingMode::kNoisy;
  throw std::invalid_argument("unknown training mode '" + std::string(name) + "'");
}

Drop sample_drop(int ue_count, const Scenario& scenario, PlacementModel model,
                 const SquareDeployment& square, Rng& rng) {
  if (ue_count < 0) throw std::invalid_argument("UE count must be nonnegative");
  const double near = far_field_distance(scenario.panel, scenario.carrier);
  if (near >= scenario.max_distance) {
    throw std::invalid_argument("far-field bound exceeds the maximum UE distance");
  }
  Drop drop;
  drop.model = model;
  drop.ues.reserve(ue_count);
  if (model == PlacementModel::kQuarterDisc) {
    std::uniform_real_distribution<double> area(near * near,
                                                scenario.max_distance * scenario.max_distance);
    std::uniform_real_distribution<double> angle(0.0, kPi / 2.0);
    for (int k = 0; k < ue_count; ++k) {
      const double d = std::sqrt(area(rng));
      drop.ues.push_back({d, angle(rng)});
    }
    return drop;
  }
  square.validate();
  const double closest = std::sqrt(2.0) * square.near_edge();
  const double farthest = std::sqrt(2.0) * square.far_edge();
  if (closest < near || farthest > scenario.max_distance) {
    throw std::invalid_argument("deployment square must lie between the far-field bound and d_max");
  }
  for (int k = 0; k < ue_count; ++k) {
    const Position p = sample_ue_position(square, rng);
    drop.ues.push_back(NodePlacement::from_cartesian(p.x, p.y));
  }
  return drop;
}

std::vector<ChannelQualities> run_training(const Drop& drop, const Codebook& codebook,
                                           const Scenario& scenario, TrainingMode mode, Rng& rng) {
  const LinkBudget& budget = scenario.budget;
  const int length = budget.symbols_per_slot;
  const double rho = budget.bs_power_w;
  std::normal_distribution<double> noise(0.0, std::sqrt(budget.noise_power_w / 2.0));

  std::vector<ChannelQualities> out;
  out.reserve(drop.ues.size());
  for (const NodePlacement& ue : drop.ues) {
    ChannelQualities q;
    q.mode = mode;
    q.strength.reserve(codebook.size());
    for (int s = 0; s < codebook.size(); ++s) {
      const Complex zeta = channel_coefficient(LinkDirection::kDownlink, scenario, ue, codebook, s);
      if (mode == TrainingMode::kIdeal) {
        q.strength.push_back(length * (rho * std::norm(zeta) + budget.noise_power_w));
        continue;
      }
      const Complex clean = std::sqrt(rho) * zeta;
      double energy = 0.0;
      for (int i = 0; i < length; ++i) {
        const Complex eta{noise(rng), noise(rng)};
        energy += std::norm(clean + eta);
      }
      q.strength.push_back(energy);
    }
    out.push_back(std::move(q));
  }
  return out;
}

bool SlotSelection::contains(int s) const {
  return std::binary_search(slots.begin(), slots.end(), s);
}

std::vector<double> inclusion_probabilities(Policy policy, std::span<const double> strength) {
  const std::size_t count = strength.size();
  if (count == 0) throw std::invalid_argument("channel quality vector is empty");
  if (policy == Policy::kUnaware) return std::vector<double>(count, 1.0 / count);
  for (double v : strength) {
    if (!(v >= 0.0)) throw std::invalid_argument("channel qualities must be nonnegative");
  }
  const double total = std::accumulate(strength.begin(), strength.end(), 0.0);
  if (!(total > 0.0)) throw std::invalid_argument("channel qualities are all zero");
  std::vector<double> p(count);
  std::transform(strength.begin(), strength.end(), p.begin(),
                 [total](double v) { return v / total; });
  return p;
}

SlotSelection select_slots(Policy policy, std::span<const double> strength, Rng& rng) {
  if (strength.empty()) throw std::invalid_argument("channel quality vector is empty");
  SlotSelection selection;
  selection.policy = policy;
  if (policy == Policy::kStrongest) {
    // max_element keeps the first maximum.
    const auto best = std::max_element(strength.begin(), strength.end());
    selection.slots.push_back(static_cast<int>(best - strength.begin()));
    return selection;
  }
  const std::vector<double> p = inclusion_probabilities(policy, strength);
  while (selection.slots.empty()) {
    for (std::size_t s = 0; s < p.size(); ++s) {
      if (uniform01(rng) < p[s]) selection.slots.push_back(static_cast<int>(s));
    }
  }
  return selection;
}

const FrameTerm* SlotLedger::find(int ue) const {
  const auto it =
      std::find_if(terms.begin(), terms.end(), [ue](const FrameTerm& t) { return t.ue == ue; });
  return it == terms.end() ? nullptr : &*it;
}

UplinkFrame build_uplink_frame(const Drop& drop, std::span<const SlotSelection> selections,
                               const Codebook& codebook, const Scenario& scenario) {
  if (static_cast<int>(selections.size()) != drop.size()) {
    throw std::invalid_argument("one slot selection per UE is required");
  }
  UplinkFrame frame;
  frame.symbols_per_slot = scenario.budget.symbols_per_slot;
  frame.slots.assign(codebook.size(), SlotLedger{{}, scenario.budget.noise_power_w});
  const double amplitude = std::sqrt(scenario.budget.ue_power_w);
  for (int k = 0; k < drop.size(); ++k) {
    for (int s : selections[k].slots) {
      if (s < 0 || s >= codebook.size()) throw std::out_of_range("slot index outside the codebook");
      const Complex zeta =
          channel_coefficient(LinkDirection::kUplink, scenario, drop.ues[k], codebook, s);
      frame.slots[s].terms.push_back({k, amplitude * zeta});
    }
  }
  return frame;
}

void TimingModel::validate() const {
  if (!(slot >= 0.0) || !(config >= 0.0)) {
    throw std::invalid_argument("slot and reconfiguration durations must be nonnegative");
  }
}

double TimingModel::phase(int config_count) const { return config_count * (slot + config); }

double phase_durations(int config_count, const TimingModel& timing, bool include_training) {
  if (config_count < 1) throw std::invalid_argument("at least one configuration is required");
  timing.validate();
  return timing.phase(config_count) * (include_training ? 2.0 : 1.0);
}

double phase_durations(int config_count, double slot, double config, bool include_training) {
  return phase_durations(config_count, TimingModel{slot, config}, include_training);
}

}  // namespace risra
