// SPDX-License-Identifier: Apache-2.0
//
// Singleton-driven successive interference cancellation over the bipartite
// UE/slot access graph.
//
// The received slots are kept as a term ledger (UE id, complex coefficient)
// plus an accumulated noise variance. Decoding UE k in singleton slot s'
// subtracts the whole ledger of s' from every other slot holding k. Without
// CSI the subtraction is imperfect: k's term in slot s becomes
// zeta_k(s) - zeta_k(s'), and the noise of s' adds to that of s.
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "risra/protocol.hpp"

namespace risra {

struct AccessGraph {
  int ue_count = 0;
  int slot_count = 0;
  std::vector<std::vector<int>> ue_slots;  // edges per UE, ascending slot index
  std::vector<int> slot_degree;            // g_S

  int edge_count() const;
  std::vector<std::pair<int, int>> edges() const;  // (ue, slot), sorted
};

/// Edge (k, s) iff s is in the selection of UE k.
AccessGraph build_access_graph(std::span<const SlotSelection> selections, int slot_count);

/// Graph from raw per-UE slot lists; lists may be empty.
AccessGraph build_access_graph(std::vector<std::vector<int>> ue_slots, int slot_count);

enum class FailedDecodeRule {
  /// Remove the failed UE and every edge it has from the graph; its signal
  /// stays in the ledgers as interference.
  kDropEdges,
  /// Only the singleton slot is removed; the failed UE keeps its other edges,
  /// which keep counting toward slot degrees and can be retried.
  kKeepEdges,
};

struct ResolveOptions {
  double sinr_threshold = 1.0;  // linear, decode iff SINR >= threshold
  FailedDecodeRule on_failure = FailedDecodeRule::kDropEdges;
  /// Singleton search order; empty means ascending slot index.
  std::vector<int> slot_priority;
};

struct PeelingStep {
  int iteration = 0;
  int slot = 0;
  int ue = 0;
  double sinr = 0.0;  // linear
  bool decoded = false;
};

struct ResolutionOutcome {
  int successes = 0;         // SA
  std::vector<int> decoded;  // in decoding order
  std::vector<PeelingStep> trace;
};

/// |c_ue|^2 / (noise + sum of the other terms' |c|^2) within one slot ledger.
/// Throws std::logic_error if `ue` has no term in the ledger.
double slot_sinr(const SlotLedger& ledger, int ue);

/// Step-wise decoder exposing the intermediate graph and ledger state.
class SicDecoder {
 public:
  /// Throws std::logic_error if graph and frame disagree.
  SicDecoder(AccessGraph graph, UplinkFrame frame, ResolveOptions options = {});

  /// Processes one singleton. Returns false once no singleton is left.
  bool step();
  void run();

  const AccessGraph& graph() const { return graph_; }
  const UplinkFrame& frame() const { return frame_; }
  const ResolutionOutcome& outcome() const { return outcome_; }
  bool slot_active(int s) const { return slot_active_[s]; }
  bool ue_active(int k) const { return ue_active_[k]; }

 private:
  int find_singleton() const;
  void remove_edge(int ue, int slot);
  void cancel(int ue, int singleton);

  AccessGraph graph_;
  UplinkFrame frame_;
  ResolveOptions options_;
  std::vector<int> order_;
  std::vector<bool> slot_active_;
  std::vector<bool> ue_active_;
  ResolutionOutcome outcome_;
};

ResolutionOutcome resolve(AccessGraph graph, UplinkFrame frame, const ResolveOptions& options = {});

}  // namespace risra
