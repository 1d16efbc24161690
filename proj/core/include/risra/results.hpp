// SPDX-License-Identifier: Apache-2.0
//
// CSV persistence of campaign results.
//
// Raw rows:  policy,K,S,drop,sa,duration_slots,throughput
// Summary:   policy,K,S,drops,mean_sa,se_sa,mean_throughput,best_s,th_star
// Trace:     policy,K,S,drop,iteration,slot,ue,sinr_db,verdict
//
// Summary rows follow the first appearance of each (policy, K, S) in the raw
// rows. best_s and th_star repeat the per-(policy, K) optimum on every S row
// (lowest S on ties). Slot and UE indices in the trace are 1-based; drops and
// iterations are 0-based. Reals use the shortest round-trip representation.
#pragma once

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "risra/campaign.hpp"

namespace risra {

struct SummaryRow {
  Policy policy = Policy::kStrongest;
  int ue_count = 0;
  int config_count = 0;
  int drops = 0;
  double mean_sa = 0.0;
  double se_sa = 0.0;  // standard error of mean_sa, 0 for a single drop
  double mean_throughput = 0.0;
  int best_s = 0;        // S* for this (policy, K)
  double th_star = 0.0;  // mean throughput at S*
};

struct ResultsSummary {
  std::size_t row_count = 0;
  std::vector<SummaryRow> rows;
};

ResultsSummary summarize(std::span<const ResultRow> rows);

void write_rows_csv(std::ostream& out, std::span<const ResultRow> rows);
void write_summary_csv(std::ostream& out, const ResultsSummary& summary);
void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace);

/// `<dir>/<stem>_summary.csv` next to `path`.
std::filesystem::path summary_path(const std::filesystem::path& path);
/// `<dir>/<stem>_trace.csv` next to `path`.
std::filesystem::path trace_path(const std::filesystem::path& path);

/// Writes the raw CSV at `path` and the summary next to it.
/// Throws std::runtime_error naming the path on I/O failure.
ResultsSummary write_results(std::span<const ResultRow> rows, const std::filesystem::path& path);

void write_trace(std::span<const TraceRow> trace, const std::filesystem::path& path);

}  // namespace risra
