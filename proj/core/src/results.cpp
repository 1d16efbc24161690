// SPDX-License-Identifier: Apache-2.0
#include "risra/results.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

namespace risra {

namespace {

struct Accumulator {
  int count = 0;
  double sa_sum = 0.0;
  double sa_sq_sum = 0.0;
  double th_sum = 0.0;
};

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::filesystem::path sibling(const std::filesystem::path& path, const char* suffix) {
  std::filesystem::path out = path;
  out.replace_filename(path.stem().string() + suffix + ".csv");
  return out;
}

}  // namespace

ResultsSummary summarize(std::span<const ResultRow> rows) {
  using Key = std::tuple<Policy, int, int>;
  std::map<Key, Accumulator> acc;
  std::vector<Key> order;
  for (const ResultRow& r : rows) {
    const Key key{r.policy, r.ue_count, r.config_count};
    auto [it, inserted] = acc.try_emplace(key);
    if (inserted) order.push_back(key);
    Accumulator& a = it->second;
    ++a.count;
    a.sa_sum += r.sa;
    a.sa_sq_sum += static_cast<double>(r.sa) * r.sa;
    a.th_sum += r.throughput;
  }

  ResultsSummary summary;
  summary.row_count = rows.size();
  summary.rows.reserve(order.size());
  for (const Key& key : order) {
    const Accumulator& a = acc.at(key);
    SummaryRow row;
    std::tie(row.policy, row.ue_count, row.config_count) = key;
    row.drops = a.count;
    row.mean_sa = a.sa_sum / a.count;
    row.mean_throughput = a.th_sum / a.count;
    if (a.count > 1) {
      const double var = (a.sa_sq_sum - a.count * row.mean_sa * row.mean_sa) / (a.count - 1);
      row.se_sa = std::sqrt(std::max(0.0, var) / a.count);
    }
    summary.rows.push_back(row);
  }

  // Best S per (policy, K).
  std::map<std::pair<Policy, int>, const SummaryRow*> best;
  for (const SummaryRow& row : summary.rows) {
    const auto key = std::make_pair(row.policy, row.ue_count);
    const SummaryRow*& current = best[key];
    if (current == nullptr || row.mean_throughput > current->mean_throughput ||
        (row.mean_throughput == current->mean_throughput &&
         row.config_count < current->config_count)) {
      current = &row;
    }
  }
  std::map<std::pair<Policy, int>, std::pair<int, double>> optimum;
  for (const auto& [key, row] : best) optimum[key] = {row->config_count, row->mean_throughput};
  for (SummaryRow& row : summary.rows) {
    std::tie(row.best_s, row.th_star) = optimum.at({row.policy, row.ue_count});
  }
  return summary;
}

void write_rows_csv(std::ostream& out, std::span<const ResultRow> rows) {
  out << "policy,K,S,drop,sa,duration_slots,throughput\n";
  for (const ResultRow& r : rows) {
    fmt::print(out, "{},{},{},{},{},{},{}\n", to_string(r.policy), r.ue_count, r.config_count,
               r.drop, r.sa, r.duration_slots, r.throughput);
  }
}

void write_summary_csv(std::ostream& out, const ResultsSummary& summary) {
  out << "policy,K,S,drops,mean_sa,se_sa,mean_throughput,best_s,th_star\n";
  for (const SummaryRow& r : summary.rows) {
    fmt::print(out, "{},{},{},{},{},{},{},{},{}\n", to_string(r.policy), r.ue_count,
               r.config_count, r.drops, r.mean_sa, r.se_sa, r.mean_throughput, r.best_s,
               r.th_star);
  }
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace) {
  out << "policy,K,S,drop,iteration,slot,ue,sinr_db,verdict\n";
  for (const TraceRow& t : trace) {
    const double sinr_db = t.step.sinr > 0.0 ? 10.0 * std::log10(t.step.sinr)
                                             : -std::numeric_limits<double>::infinity();
    fmt::print(out, "{},{},{},{},{},{},{},{},{}\n", to_string(t.policy), t.ue_count,
               t.config_count, t.drop, t.step.iteration, t.step.slot + 1, t.step.ue + 1, sinr_db,
               t.step.decoded ? "decoded" : "failed");
  }
}

std::filesystem::path summary_path(const std::filesystem::path& path) {
  return sibling(path, "_summary");
}

std::filesystem::path trace_path(const std::filesystem::path& path) {
  return sibling(path, "_trace");
}

ResultsSummary write_results(std::span<const ResultRow> rows, const std::filesystem::path& path) {
  ResultsSummary summary = summarize(rows);
  {
    std::ofstream out = open_for_write(path);
    write_rows_csv(out, rows);
    finish(out, path);
  }
  const std::filesystem::path side = summary_path(path);
  std::ofstream out = open_for_write(side);
  write_summary_csv(out, summary);
  finish(out, side);
  return summary;
}

void write_trace(std::span<const TraceRow> trace, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  write_trace_csv(out, trace);
  finish(out, path);
}

}  // namespace risra
