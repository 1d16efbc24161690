// SPDX-License-Identifier: Apache-2.0
#include "risra/sic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace risra {

int AccessGraph::edge_count() const {
  return std::accumulate(slot_degree.begin(), slot_degree.end(), 0);
}

std::vector<std::pair<int, int>> AccessGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int k = 0; k < ue_count; ++k) {
    for (int s : ue_slots[k]) out.emplace_back(k, s);
  }
  return out;
}

AccessGraph build_access_graph(std::vector<std::vector<int>> ue_slots, int slot_count) {
  if (slot_count < 0) throw std::invalid_argument("slot count must be nonnegative");
  AccessGraph g;
  g.ue_count = static_cast<int>(ue_slots.size());
  g.slot_count = slot_count;
  g.slot_degree.assign(slot_count, 0);
  for (auto& slots : ue_slots) {
    std::sort(slots.begin(), slots.end());
    slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
    for (int s : slots) {
      if (s < 0 || s >= slot_count) throw std::out_of_range("edge to a slot outside the frame");
      ++g.slot_degree[s];
    }
  }
  g.ue_slots = std::move(ue_slots);
  return g;
}

AccessGraph build_access_graph(std::span<const SlotSelection> selections, int slot_count) {
  std::vector<std::vector<int>> lists;
  lists.reserve(selections.size());
  for (const SlotSelection& sel : selections) lists.push_back(sel.slots);
  return build_access_graph(std::move(lists), slot_count);
}

double slot_sinr(const SlotLedger& ledger, int ue) {
  double signal = -1.0;
  double interference = 0.0;
  for (const FrameTerm& t : ledger.terms) {
    if (t.ue == ue) {
      signal = std::norm(t.coefficient);
    } else {
      interference += std::norm(t.coefficient);
    }
  }
  if (signal < 0.0) throw std::logic_error("UE " + std::to_string(ue) + " has no term in the slot");
  return signal / (ledger.noise + interference);
}

SicDecoder::SicDecoder(AccessGraph graph, UplinkFrame frame, ResolveOptions options)
    : graph_(std::move(graph)), frame_(std::move(frame)), options_(std::move(options)) {
  if (graph_.slot_count != frame_.slot_count()) {
    throw std::logic_error("access graph and frame have different slot counts");
  }
  for (int k = 0; k < graph_.ue_count; ++k) {
    for (int s : graph_.ue_slots[k]) {
      if (frame_.slots[s].find(k) == nullptr) {
        throw std::logic_error("edge (" + std::to_string(k) + ", " + std::to_string(s) +
                               ") has no ledger term");
      }
    }
  }
  for (int s = 0; s < graph_.slot_count; ++s) {
    if (static_cast<int>(frame_.slots[s].terms.size()) != graph_.slot_degree[s]) {
      throw std::logic_error("slot " + std::to_string(s) + " ledger does not match its degree");
    }
  }
  if (options_.slot_priority.empty()) {
    order_.resize(graph_.slot_count);
    std::iota(order_.begin(), order_.end(), 0);
  } else {
    order_ = options_.slot_priority;
    std::vector<int> check = order_;
    std::sort(check.begin(), check.end());
    for (int s = 0; s < static_cast<int>(check.size()); ++s) {
      if (check[s] != s || static_cast<int>(check.size()) != graph_.slot_count) {
        throw std::invalid_argument("slot priority must be a permutation of the slots");
      }
    }
  }
  slot_active_.assign(graph_.slot_count, true);
  ue_active_.assign(graph_.ue_count, true);
}

int SicDecoder::find_singleton() const {
  for (int s : order_) {
    if (slot_active_[s] && graph_.slot_degree[s] == 1) return s;
  }
  return -1;
}

void SicDecoder::remove_edge(int ue, int slot) {
  auto& slots = graph_.ue_slots[ue];
  const auto it = std::lower_bound(slots.begin(), slots.end(), slot);
  if (it != slots.end() && *it == slot) {
    slots.erase(it);
    --graph_.slot_degree[slot];
  }
}

void SicDecoder::cancel(int ue, int singleton) {
  const SlotLedger source = frame_.slots[singleton];
  for (int s : graph_.ue_slots[ue]) {
    if (s == singleton) continue;
    SlotLedger& target = frame_.slots[s];
    for (const FrameTerm& term : source.terms) {
      const auto it = std::find_if(target.terms.begin(), target.terms.end(),
                                   [&](const FrameTerm& t) { return t.ue == term.ue; });
      if (it != target.terms.end()) {
        it->coefficient -= term.coefficient;
      } else {
        target.terms.push_back({term.ue, -term.coefficient});
      }
    }
    target.noise += source.noise;
  }
}

bool SicDecoder::step() {
  const int slot = find_singleton();
  if (slot < 0) return false;
  const int ue = [&] {
    for (int k = 0; k < graph_.ue_count; ++k) {
      if (std::binary_search(graph_.ue_slots[k].begin(), graph_.ue_slots[k].end(), slot)) return k;
    }
    throw std::logic_error("singleton slot without an edge");
  }();

  PeelingStep record;
  record.iteration = static_cast<int>(outcome_.trace.size());
  record.slot = slot;
  record.ue = ue;
  record.sinr = slot_sinr(frame_.slots[slot], ue);
  record.decoded = record.sinr >= options_.sinr_threshold;

  if (record.decoded) {
    ++outcome_.successes;
    outcome_.decoded.push_back(ue);
    cancel(ue, slot);
    const std::vector<int> incident = graph_.ue_slots[ue];
    for (int s : incident) remove_edge(ue, s);
  } else if (options_.on_failure == FailedDecodeRule::kDropEdges) {
    const std::vector<int> incident = graph_.ue_slots[ue];
    for (int s : incident) remove_edge(ue, s);
  } else {
    remove_edge(ue, slot);
  }
  ue_active_[ue] = false;
  slot_active_[slot] = false;
  outcome_.trace.push_back(record);
  return true;
}

void SicDecoder::run() {
  while (step()) {
  }
}

ResolutionOutcome resolve(AccessGraph graph, UplinkFrame frame, const ResolveOptions& options) {
  SicDecoder decoder(std::move(graph), std::move(frame), options);
  decoder.run();
  return decoder.outcome();
}

}  // namespace risra
