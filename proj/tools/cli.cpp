// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <fstream>
#include <optional>
#include <string>

#include "risra/campaign.hpp"
#include "risra/config.hpp"
#include "risra/em_channel.hpp"
#include "risra/pathloss_distribution.hpp"
#include "risra/results.hpp"

namespace risra::cli {

namespace {

struct RunArgs {
  std::string config;
  std::string policies;
  std::string k;
  std::string s;
  std::optional<int> drops;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool trace = false;
  std::optional<int> workers;
};

struct DistArgs {
  std::string config;
  std::string side = "dl";
  int grid = 200;
  double offset = 15.0;
  double side_length = 50.0;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  std::string out;
};

struct CodebookArgs {
  std::string config;
  int s = 4;
};

CampaignConfig base_config(const std::string& path) {
  return path.empty() ? CampaignConfig{} : load_config(path);
}

int do_run(const RunArgs& args, std::ostream& out) {
  CampaignConfig cfg = load_config(args.config);
  if (!args.policies.empty()) cfg.policies = parse_policy_list(args.policies);
  if (!args.k.empty()) cfg.ue_counts = parse_int_sweep(args.k, "k");
  if (!args.s.empty()) cfg.config_counts = parse_int_sweep(args.s, "s");
  if (args.drops) cfg.drops = *args.drops;
  if (args.seed) cfg.seed = *args.seed;
  if (!args.out.empty()) cfg.output = args.out;
  if (args.trace) cfg.trace = true;
  if (args.workers) cfg.workers = *args.workers;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), 0, "");
  }

  const CampaignResult result = run_campaign(cfg);
  const ResultsSummary summary = write_results(result.rows, cfg.output);
  fmt::print(out, "wrote {} rows to {}\n", summary.row_count, cfg.output);
  fmt::print(out, "wrote {} summary rows to {}\n", summary.rows.size(),
             summary_path(cfg.output).string());
  if (cfg.trace) {
    write_trace(result.trace, trace_path(cfg.output));
    fmt::print(out, "wrote {} trace rows to {}\n", result.trace.size(),
               trace_path(cfg.output).string());
  }
  for (int s : cfg.config_counts) {
    const Codebook book = build_codebook(s, cfg.scenario.carrier, cfg.scenario.panel,
                                         cfg.scenario.bs_angle);
    fmt::print(out, "codebook S={}:", s);
    for (double theta : book.directions) fmt::print(out, " {:.6f}", rad_to_deg(theta));
    fmt::print(out, " deg\n");
  }
  return kExitOk;
}

int do_dist(const DistArgs& args, std::ostream& out) {
  const CampaignConfig cfg = base_config(args.config);
  if (args.side != "dl" && args.side != "ul") throw ConfigError("expected dl or ul", 0, "side");
  if (args.grid < 2) throw ConfigError("must be >= 2", 0, "grid");
  if (!(args.offset > 0.0)) throw ConfigError("must be positive", 0, "l0");
  if (!(args.side_length > 0.0)) throw ConfigError("must be positive", 0, "length");
  const bool downlink = args.side == "dl";
  const SquareDeployment square{args.offset, args.side_length};
  const Scenario& sc = cfg.scenario;
  const double omega = pathloss_constant(sc.budget, sc.panel, sc.bs_distance);
  const Support support = downlink ? dl_pathloss_support(omega, sc.bs_angle, square)
                                   : ul_pathloss_support(omega, square);

  Rng rng = make_stream({args.seed, downlink ? 0u : 1u});
  const EmpiricalCdf empirical(sample_pathloss(
      downlink ? LinkDirection::kDownlink : LinkDirection::kUplink, args.samples, omega,
      sc.bs_angle, square, rng));

  std::ofstream file;
  if (!args.out.empty()) {
    file.open(args.out, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open '" + args.out + "' for writing");
  }
  std::ostream& sink = args.out.empty() ? out : file;
  sink << "beta,cdf,pdf,empirical_cdf\n";
  for (int i = 0; i < args.grid; ++i) {
    const double beta = support.lower + (support.upper - support.lower) * i / (args.grid - 1);
    const double cdf = downlink ? dl_pathloss_cdf(beta, omega, sc.bs_angle, square)
                                : ul_pathloss_cdf(beta, omega, square);
    const double pdf = downlink ? dl_pathloss_pdf(beta, omega, sc.bs_angle, square)
                                : ul_pathloss_pdf(beta, omega, square);
    fmt::print(sink, "{},{},{},{}\n", beta, cdf, pdf, empirical(beta));
  }
  if (!args.out.empty()) {
    file.flush();
    if (!file) throw std::runtime_error("failed writing '" + args.out + "'");
  }
  return kExitOk;
}

int do_codebook(const CodebookArgs& args, std::ostream& out) {
  const CampaignConfig cfg = base_config(args.config);
  if (args.s < 1) throw ConfigError("must be >= 1", 0, "s");
  const Scenario& sc = cfg.scenario;
  const Codebook book = build_codebook(args.s, sc.carrier, sc.panel, sc.bs_angle);
  out << "s,theta_deg";
  for (int m = 1; m <= sc.panel.nx; ++m) fmt::print(out, ",phi_{}", m);
  out << '\n';
  for (int s = 0; s < book.size(); ++s) {
    fmt::print(out, "{},{:.6f}", s + 1, rad_to_deg(book.directions[s]));
    for (double phi : book.phases[s]) fmt::print(out, ",{:.6f}", phi);
    out << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"RIS-aided random access simulator", "risra"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a Monte Carlo campaign");
  run_cmd->add_option("--config", run_args.config, "YAML campaign file")->required();
  run_cmd->add_option("--policies", run_args.policies, "Comma-separated: scp,carp,urp");
  run_cmd->add_option("--k", run_args.k, "UE counts, a:b[:step] or a,b,c");
  run_cmd->add_option("--s", run_args.s, "Codebook sizes, a:b[:step] or a,b,c");
  run_cmd->add_option("--drops", run_args.drops, "Drops per grid point");
  run_cmd->add_option("--seed", run_args.seed, "Master seed");
  run_cmd->add_option("--out", run_args.out, "Raw results CSV");
  run_cmd->add_flag("--trace", run_args.trace, "Also write the peeling trace CSV");
  run_cmd->add_option("--workers", run_args.workers, "Worker threads");

  DistArgs dist_args;
  CLI::App* dist_cmd = app.add_subcommand("dist", "Tabulate pathloss CDF/PDF on a square deployment");
  dist_cmd->add_option("--config", dist_args.config, "YAML file for the physical parameters");
  dist_cmd->add_option("--side", dist_args.side, "dl or ul")->capture_default_str();
  dist_cmd->add_option("--grid", dist_args.grid, "Grid points across the support")->capture_default_str();
  dist_cmd->add_option("--l0", dist_args.offset, "Square offset l0 in m")->capture_default_str();
  dist_cmd->add_option("--length", dist_args.side_length, "Square side l in m")->capture_default_str();
  dist_cmd->add_option("--samples", dist_args.samples, "Monte Carlo samples")->capture_default_str();
  dist_cmd->add_option("--seed", dist_args.seed, "Sampling seed")->capture_default_str();
  dist_cmd->add_option("--out", dist_args.out, "Output CSV (stdout if omitted)");

  CodebookArgs book_args;
  CLI::App* book_cmd = app.add_subcommand("codebook", "Print reflection directions and phase profiles");
  book_cmd->add_option("--config", book_args.config, "YAML file for the physical parameters");
  book_cmd->add_option("--s", book_args.s, "Number of configurations")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitConfigError;
  }

  try {
    if (*run_cmd) return do_run(run_args, out);
    if (*dist_cmd) return do_dist(dist_args, out);
    return do_codebook(book_args, out);
  } catch (const ConfigError& e) {
    fmt::print(err, "configuration error: {}\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitFailure;
  }
}

}  // namespace risra::cli
