// SPDX-License-Identifier: Apache-2.0
#include "risra/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "risra/rng.hpp"

namespace risra {

namespace {

constexpr std::uint64_t kPlacementTag = 0x706c616365ULL;  // "place"
constexpr std::uint64_t kProtocolTag = 0x70726f746fULL;   // "proto"

struct GridPoint {
  Policy policy;
  int ue_count;
  int config_count;
};

}  // namespace

CampaignConfig::CampaignConfig() {
  ue_counts.resize(50);
  std::iota(ue_counts.begin(), ue_counts.end(), 1);
}

void CampaignConfig::validate() const {
  scenario.validate();
  timing.validate();
  if (policies.empty() || ue_counts.empty() || config_counts.empty()) {
    throw std::invalid_argument("policy, K and S sweeps must be nonempty");
  }
  if (drops < 1) throw std::invalid_argument("drops must be >= 1");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  for (int k : ue_counts) {
    if (k < 0) throw std::invalid_argument("K values must be nonnegative");
  }
  for (int s : config_counts) {
    if (s < 1) throw std::invalid_argument("S values must be >= 1");
  }
  if (far_field_distance(scenario.panel, scenario.carrier) >= scenario.max_distance) {
    throw std::invalid_argument("d_max must exceed the far-field distance of the panel");
  }
  if (placement == PlacementModel::kSquare) {
    square.validate();
    const double near = far_field_distance(scenario.panel, scenario.carrier);
    if (std::sqrt(2.0) * square.near_edge() < near ||
        std::sqrt(2.0) * square.far_edge() > scenario.max_distance) {
      throw std::invalid_argument("deployment square must lie between the far-field bound and d_max");
    }
  }
}

double compute_throughput(int sa, int config_count, double slot, double config, Policy policy) {
  if (sa < 0) throw std::invalid_argument("SA must be nonnegative");
  const double duration = phase_durations(config_count, slot, config, needs_training(policy));
  return duration > 0.0 ? sa / duration : 0.0;
}

std::uint64_t placement_stream_id(std::uint64_t seed, int ue_count, int drop) {
  return substream_id({seed, kPlacementTag, static_cast<std::uint64_t>(ue_count),
                       static_cast<std::uint64_t>(drop)});
}

std::uint64_t protocol_stream_id(std::uint64_t seed, Policy policy, int ue_count,
                                 int config_count, int drop) {
  return substream_id({seed, kProtocolTag, static_cast<std::uint64_t>(policy),
                       static_cast<std::uint64_t>(ue_count),
                       static_cast<std::uint64_t>(config_count), static_cast<std::uint64_t>(drop)});
}

ResolutionOutcome run_drop(const CampaignConfig& config, const Codebook& codebook, Policy policy,
                           int ue_count, int drop) {
  const Scenario& scenario = config.scenario;
  const int config_count = codebook.size();

  Rng place{placement_stream_id(config.seed, ue_count, drop)};
  Drop ues = sample_drop(ue_count, scenario, config.placement, config.square, place);
  ues.seed = placement_stream_id(config.seed, ue_count, drop);

  Rng proto{protocol_stream_id(config.seed, policy, ue_count, config_count, drop)};
  std::vector<SlotSelection> selections;
  selections.reserve(ue_count);
  if (needs_training(policy)) {
    const std::vector<ChannelQualities> xi = run_training(ues, codebook, scenario, config.training, proto);
    for (const ChannelQualities& q : xi) selections.push_back(select_slots(policy, q.strength, proto));
  } else {
    const std::vector<double> flat(config_count, 1.0);
    for (int k = 0; k < ue_count; ++k) selections.push_back(select_slots(policy, flat, proto));
  }

  UplinkFrame frame = build_uplink_frame(ues, selections, codebook, scenario);
  AccessGraph graph = build_access_graph(selections, config_count);
  ResolveOptions options;
  options.sinr_threshold = scenario.budget.snr_threshold;
  options.on_failure = config.on_failure;
  return resolve(std::move(graph), std::move(frame), options);
}

CampaignResult run_campaign(const CampaignConfig& config) {
  config.validate();

  std::map<int, Codebook> codebooks;
  for (int s : config.config_counts) {
    codebooks.emplace(s, build_codebook(s, config.scenario.carrier, config.scenario.panel,
                                        config.scenario.bs_angle));
  }

  std::vector<GridPoint> grid;
  for (Policy p : config.policies) {
    for (int k : config.ue_counts) {
      for (int s : config.config_counts) grid.push_back({p, k, s});
    }
  }

  const std::size_t drops = static_cast<std::size_t>(config.drops);
  const std::size_t total = grid.size() * drops;
  std::vector<ResultRow> rows(total);
  std::vector<std::vector<PeelingStep>> traces(config.trace ? total : 0);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < total; i = next++) {
        const GridPoint& point = grid[i / drops];
        const int drop = static_cast<int>(i % drops);
        ResolutionOutcome outcome = run_drop(config, codebooks.at(point.config_count),
                                             point.policy, point.ue_count, drop);
        ResultRow& row = rows[i];
        row.policy = point.policy;
        row.ue_count = point.ue_count;
        row.config_count = point.config_count;
        row.drop = drop;
        row.sa = outcome.successes;
        row.duration_slots = phase_durations(point.config_count, config.timing,
                                             needs_training(point.policy));
        row.throughput = compute_throughput(row.sa, point.config_count, config.timing.slot,
                                            config.timing.config, point.policy);
        if (config.trace) traces[i] = std::move(outcome.trace);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = total;
    }
  };

  const int thread_count = std::min<std::size_t>(config.workers, std::max<std::size_t>(total, 1));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  CampaignResult result;
  result.rows = std::move(rows);
  if (config.trace) {
    for (std::size_t i = 0; i < total; ++i) {
      const ResultRow& row = result.rows[i];
      for (const PeelingStep& step : traces[i]) {
        result.trace.push_back({row.policy, row.ue_count, row.config_count, row.drop, step});
      }
    }
  }
  return result;
}

}  // namespace risra
