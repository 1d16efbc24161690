// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "risra/results.hpp"

namespace risra {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    out.push_back(cells);
  }
  return out;
}

class Results : public ::testing::Test {
 protected:
  fs::path dir;
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("risra_results_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
};

ResultRow row(Policy p, int k, int s, int drop, int sa) {
  const double dur = phase_durations(s, 1.0, 1.0, needs_training(p));
  return {p, k, s, drop, sa, dur, sa / dur};
}

TEST_F(Results, EmptyRowsGiveHeaderOnlyFiles) {
  const ResultsSummary sum = write_results({}, dir / "r.csv");
  EXPECT_EQ(sum.row_count, 0u);
  EXPECT_TRUE(sum.rows.empty());
  EXPECT_EQ(slurp(dir / "r.csv"), "policy,K,S,drop,sa,duration_slots,throughput\n");
  EXPECT_EQ(slurp(dir / "r_summary.csv"),
            "policy,K,S,drops,mean_sa,se_sa,mean_throughput,best_s,th_star\n");
}

TEST_F(Results, RawRowFormat) {
  const std::vector<ResultRow> rows{row(Policy::kUnaware, 5, 4, 0, 3)};
  write_results(rows, dir / "r.csv");
  EXPECT_EQ(slurp(dir / "r.csv"),
            "policy,K,S,drop,sa,duration_slots,throughput\nurp,5,4,0,3,8,0.375\n");
}

TEST_F(Results, IdenticalRowsAverageToThemselves) {
  const std::vector<ResultRow> rows{row(Policy::kStrongest, 3, 2, 0, 1), row(Policy::kStrongest, 3, 2, 1, 1)};
  const ResultsSummary sum = summarize(rows);
  ASSERT_EQ(sum.rows.size(), 1u);
  EXPECT_EQ(sum.row_count, 2u);
  EXPECT_EQ(sum.rows[0].drops, 2);
  EXPECT_DOUBLE_EQ(sum.rows[0].mean_sa, 1.0);
  EXPECT_DOUBLE_EQ(sum.rows[0].se_sa, 0.0);
  EXPECT_DOUBLE_EQ(sum.rows[0].mean_throughput, rows[0].throughput);
  EXPECT_EQ(sum.rows[0].best_s, 2);
}

TEST_F(Results, StandardError) {
  const std::vector<ResultRow> rows{row(Policy::kStrongest, 3, 2, 0, 0), row(Policy::kStrongest, 3, 2, 1, 2),
                                    row(Policy::kStrongest, 3, 2, 2, 1)};
  // Sample variance 1, three drops.
  EXPECT_NEAR(summarize(rows).rows[0].se_sa, std::sqrt(1.0 / 3.0), 1e-15);
}

TEST_F(Results, BestConfigurationMatchesIndependentRecount) {
  CampaignConfig cfg;
  cfg.ue_counts = {1, 4, 9};
  cfg.config_counts = {2, 4, 8};
  cfg.drops = 40;
  const CampaignResult res = run_campaign(cfg);
  const ResultsSummary sum = write_results(res.rows, dir / "r.csv");

  // Recompute from the raw CSV text alone.
  const auto raw = parse_csv(slurp(dir / "r.csv"));
  std::map<std::tuple<std::string, int, int>, std::pair<double, int>> th;
  for (std::size_t i = 1; i < raw.size(); ++i) {
    auto& acc = th[{raw[i][0], std::stoi(raw[i][1]), std::stoi(raw[i][2])}];
    acc.first += std::stod(raw[i][6]);
    acc.second += 1;
  }
  std::map<std::pair<std::string, int>, std::pair<double, int>> best;
  for (const auto& [key, acc] : th) {
    const double mean = acc.first / acc.second;
    auto& b = best[{std::get<0>(key), std::get<1>(key)}];
    if (b.second == 0 || mean > b.first) b = {mean, std::get<2>(key)};
  }
  const auto summary = parse_csv(slurp(dir / "r_summary.csv"));
  ASSERT_EQ(summary.size(), sum.rows.size() + 1);
  EXPECT_EQ(summary[0].size(), 9u);
  for (std::size_t i = 1; i < summary.size(); ++i) {
    const auto& b = best.at({summary[i][0], std::stoi(summary[i][1])});
    EXPECT_NEAR(std::stod(summary[i][8]), b.first, 1e-12);
    EXPECT_EQ(std::stoi(summary[i][7]), b.second);
  }
}

TEST_F(Results, TieOnThroughputPrefersSmallerS) {
  const std::vector<ResultRow> rows{row(Policy::kUnaware, 2, 4, 0, 0), row(Policy::kUnaware, 2, 2, 0, 0)};
  const ResultsSummary sum = summarize(rows);
  EXPECT_EQ(sum.rows[0].best_s, 2);
  EXPECT_EQ(sum.rows[1].best_s, 2);
  EXPECT_EQ(sum.rows[0].config_count, 4);
}

TEST_F(Results, TraceFormat) {
  const std::vector<TraceRow> trace{{Policy::kConfigAware, 2, 4, 7, PeelingStep{0, 2, 1, 100.0, true}},
                                    {Policy::kConfigAware, 2, 4, 7, PeelingStep{1, 0, 0, 0.5, false}}};
  write_trace(trace, dir / "t.csv");
  EXPECT_EQ(slurp(dir / "t.csv"),
            "policy,K,S,drop,iteration,slot,ue,sinr_db,verdict\n"
            "carp,2,4,7,0,3,2,20,decoded\n"
            "carp,2,4,7,1,1,1,-3.010299956639812,failed\n");
}

TEST_F(Results, IoFailureNamesPath) {
  const fs::path bad = dir / "missing" / "r.csv";
  try {
    write_results({}, bad);
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find(bad.string()), std::string::npos);
  }
}

TEST(ResultPaths, SiblingNames) {
  EXPECT_EQ(summary_path("out/run.csv"), fs::path("out/run_summary.csv"));
  EXPECT_EQ(trace_path("run.csv"), fs::path("run_trace.csv"));
}

}  // namespace
}  // namespace risra
