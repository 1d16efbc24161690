// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "risra/campaign.hpp"
#include "risra/em_channel.hpp"
#include "risra/sic.hpp"

namespace {

using namespace risra;

void BM_ArrayFactor(benchmark::State& state) {
  const Scenario sc = Scenario::reference();
  const Codebook book = build_codebook(static_cast<int>(state.range(0)), sc.carrier, sc.panel, sc.bs_angle);
  double angle = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(array_factor(angle, sc.bs_angle, book, 0, sc.panel, sc.carrier));
    angle += 1e-9;
  }
}
BENCHMARK(BM_ArrayFactor)->Arg(4)->Arg(16);

void BM_RunDrop(benchmark::State& state) {
  CampaignConfig cfg;
  const int k = static_cast<int>(state.range(0));
  const Policy policy = static_cast<Policy>(state.range(1));
  const Codebook book = build_codebook(4, cfg.scenario.carrier, cfg.scenario.panel, cfg.scenario.bs_angle);
  int drop = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_drop(cfg, book, policy, k, drop++));
  }
}
BENCHMARK(BM_RunDrop)
    ->ArgsProduct({{1, 10, 50},
                   {static_cast<int>(Policy::kStrongest), static_cast<int>(Policy::kConfigAware),
                    static_cast<int>(Policy::kUnaware)}});

void BM_Resolve(benchmark::State& state) {
  // Chain: UE k occupies slots k and k + 1, so peeling runs from the last slot down.
  const int n = static_cast<int>(state.range(0));
  std::vector<std::vector<int>> lists(n);
  UplinkFrame frame;
  frame.slots.assign(n + 1, SlotLedger{{}, 1e-3});
  for (int k = 0; k < n; ++k) {
    lists[k] = {k, k + 1};
    frame.slots[k].terms.push_back({k, Complex{1.0 + k, 0.5}});
    frame.slots[k + 1].terms.push_back({k, Complex{0.5, 1.0 + k}});
  }
  const AccessGraph graph = build_access_graph(lists, n + 1);
  ResolveOptions opt;
  opt.sinr_threshold = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(resolve(graph, frame, opt));
  }
}
BENCHMARK(BM_Resolve)->Arg(8)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
