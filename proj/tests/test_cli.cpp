// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "risra");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = risra::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  fs::path dir;
  fs::path config;
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("risra_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir);
    config = dir / "c.yaml";
    std::ofstream(config) << "campaign:\n  drops: 5\n  k: \"1:3\"\n  s: [2]\n";
  }
  void TearDown() override { fs::remove_all(dir); }
};

TEST_F(Cli, CodebookPrintsDegreesToSixDecimals) {
  const Invocation r = invoke({"codebook", "--s", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("s,theta_deg,phi_1", 0), 0u);
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("1,11.250000,", 0), 0u);
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("2,33.750000,", 0), 0u);
}

TEST_F(Cli, RunWritesCsvsAndOverridesApply) {
  const fs::path out = dir / "res.csv";
  const Invocation r = invoke({"run", "--config", config.string(), "--policies", "urp", "--drops", "3",
                               "--out", out.string(), "--trace", "--seed", "5", "--workers", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string raw = slurp(out);
  EXPECT_EQ(raw.rfind("policy,K,S,drop,sa,duration_slots,throughput\n", 0), 0u);
  int lines = 0;
  for (char ch : raw) lines += ch == '\n' ? 1 : 0;
  EXPECT_EQ(lines, 1 + 3 * 1 * 3);
  EXPECT_TRUE(fs::exists(dir / "res_summary.csv"));
  EXPECT_TRUE(fs::exists(dir / "res_trace.csv"));
  EXPECT_NE(r.out.find("codebook S=2: 22.500000 67.500000 deg"), std::string::npos);
}

TEST_F(Cli, RunIsByteIdenticalAcrossWorkerCounts) {
  invoke({"run", "--config", config.string(), "--out", (dir / "a.csv").string(), "--workers", "1"});
  invoke({"run", "--config", config.string(), "--out", (dir / "b.csv").string(), "--workers", "3"});
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
  EXPECT_EQ(slurp(dir / "a_summary.csv"), slurp(dir / "b_summary.csv"));
}

TEST_F(Cli, ConfigurationErrorsExitTwo) {
  EXPECT_EQ(invoke({"run", "--config", config.string(), "--policies", "aloha"}).code, 2);
  EXPECT_EQ(invoke({"run", "--config", (dir / "none.yaml").string()}).code, 2);
  EXPECT_EQ(invoke({"run"}).code, 2);
  EXPECT_EQ(invoke({"run", "--config", config.string(), "--k", "x"}).code, 2);
  EXPECT_EQ(invoke({"run", "--config", config.string(), "--drops", "0"}).code, 2);
  EXPECT_EQ(invoke({"dist", "--side", "xl"}).code, 2);
  EXPECT_EQ(invoke({"codebook", "--s", "0"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  std::ofstream(dir / "bad.yaml") << "link:\n  L: zero\n";
  const Invocation r = invoke({"run", "--config", (dir / "bad.yaml").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'L'"), std::string::npos);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST_F(Cli, UnwritableOutputIsRuntimeFailure) {
  const Invocation r =
      invoke({"run", "--config", config.string(), "--out", (dir / "no" / "x.csv").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("x.csv"), std::string::npos);
}

TEST_F(Cli, DistEmitsTable) {
  for (const char* side : {"dl", "ul"}) {
    const fs::path out = dir / (std::string(side) + ".csv");
    const Invocation r = invoke({"dist", "--side", side, "--grid", "11", "--samples", "20000", "--out", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(slurp(out));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "beta,cdf,pdf,empirical_cdf");
    int n = 0;
    double last_cdf = -1.0;
    while (std::getline(in, line)) {
      ++n;
      std::istringstream cells(line);
      std::string b;
      std::string f;
      std::getline(cells, b, ',');
      std::getline(cells, f, ',');
      EXPECT_GE(std::stod(f), last_cdf);
      last_cdf = std::stod(f);
    }
    EXPECT_EQ(n, 11);
    EXPECT_DOUBLE_EQ(last_cdf, 1.0);
  }
}

TEST_F(Cli, HelpExitsZero) {
  const Invocation r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("run"), std::string::npos);
}

}  // namespace
