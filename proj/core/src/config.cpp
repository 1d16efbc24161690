// SPDX-License-Identifier: Apache-2.0
#include "risra/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace risra {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_int(const std::string& s, std::string_view name) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("'" + s + "' is not an integer", 0, std::string(name));
  }
  return value;
}

int line_of(const YAML::Node& node) { return node.Mark().line + 1; }

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) throw ConfigError("expected a scalar", line_of(node), key);
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("cannot parse '" + node.Scalar() + "'", line_of(node), key);
  }
}

// Sequence of scalars joined with commas, or the scalar itself.
std::string list_text(const YAML::Node& node, const std::string& key) {
  if (node.IsScalar()) return node.Scalar();
  if (!node.IsSequence()) throw ConfigError("expected a list or a scalar", line_of(node), key);
  std::string out;
  for (const YAML::Node& item : node) {
    if (!item.IsScalar()) throw ConfigError("list entries must be scalars", line_of(item), key);
    if (!out.empty()) out += ',';
    out += item.Scalar();
  }
  return out;
}

double positive(double v, const YAML::Node& node, const std::string& key) {
  if (!(v > 0.0)) throw ConfigError("must be positive", line_of(node), key);
  return v;
}

using Setter = std::function<void(CampaignConfig&, const YAML::Node&, const std::string&)>;

struct Pending {
  double fc_hz = 3e9;
  double dx_over_lambda = 1.0;
  double dz_over_lambda = 1.0;
  int nx = 10;
  int nz = 10;
};

}  // namespace

ConfigError::ConfigError(const std::string& message, int line, std::string key)
    : std::runtime_error(
          (key.empty() ? std::string() : "key '" + key + "': ") + message +
          (line > 0 ? " (line " + std::to_string(line) + ")" : std::string())),
      line_(line),
      key_(std::move(key)) {}

std::vector<int> parse_int_sweep(std::string_view text, std::string_view name) {
  const std::string body = trim(text);
  if (body.empty()) throw ConfigError("empty sweep", 0, std::string(name));
  std::vector<int> out;
  if (body.find(':') != std::string::npos) {
    const std::vector<std::string> parts = split(body, ':');
    if (parts.size() > 3) throw ConfigError("range must be a:b or a:b:step", 0, std::string(name));
    const int from = parse_int(parts[0], name);
    const int to = parse_int(parts[1], name);
    const int step = parts.size() == 3 ? parse_int(parts[2], name) : 1;
    if (step < 1 || to < from) throw ConfigError("range must be increasing", 0, std::string(name));
    for (int v = from; v <= to; v += step) out.push_back(v);
    return out;
  }
  for (const std::string& part : split(body, ',')) out.push_back(parse_int(part, name));
  return out;
}

std::vector<Policy> parse_policy_list(std::string_view text) {
  std::vector<Policy> out;
  for (const std::string& part : split(text, ',')) {
    try {
      out.push_back(parse_policy(part));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what(), 0, "policies");
    }
  }
  return out;
}

FailedDecodeRule parse_failed_decode(std::string_view name) {
  if (name == "drop_edges") return FailedDecodeRule::kDropEdges;
  if (name == "keep_edges") return FailedDecodeRule::kKeepEdges;
  throw std::invalid_argument("unknown failed-decode rule '" + std::string(name) + "'");
}

std::string_view to_string(FailedDecodeRule rule) {
  return rule == FailedDecodeRule::kDropEdges ? "drop_edges" : "keep_edges";
}

CampaignConfig parse_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(e.msg, e.mark.line + 1, "");
  }
  CampaignConfig cfg;
  Pending pending;
  if (root.IsNull()) return cfg;
  if (!root.IsMap()) throw ConfigError("top level must be a mapping of sections", line_of(root), "");

  LinkBudget& budget = cfg.scenario.budget;
  const std::map<std::string, std::map<std::string, Setter>> sections{
      {"carrier",
       {{"fc_hz", [&](CampaignConfig&, const YAML::Node& n, const std::string& k) {
           pending.fc_hz = positive(scalar<double>(n, k), n, k);
         }}}},
      {"geometry",
       {{"d_b_m", [](CampaignConfig& c, const YAML::Node& n, const std::string& k) {
           c.scenario.bs_distance = positive(scalar<double>(n, k), n, k);
         }},
        {"theta_b_deg", [](CampaignConfig& c, const YAML::Node& n, const std::string& k) {
           const double deg = scalar<double>(n, k);
           if (deg < 0.0 || deg > 90.0) throw ConfigError("must lie in [0, 90]", line_of(n), k);
           c.scenario.bs_angle = deg_to_rad(deg);
         }},
        {"d_max_m", [](CampaignConfig& c, const YAML::Node& n, const std::string& k) {
           c.scenario.max_distance = positive(scalar<double>(n, k), n, k);
         }}}},
      {"ris",
       {{"Nx", [&](CampaignConfig&, const YAML::Node& n, const std::string& k) {
           pending.nx = scalar<int>(n, k);
           if (pending.nx < 1) throw ConfigError("must be >= 1", line_of(n), k);
         }},
        {"Nz", [&](CampaignConfig&, const YAML::Node& n, const std::string& k) {
           pending.nz = scalar<int>(n, k);
           if (pending.nz < 1) throw ConfigError("must be >= 1", line_of(n), k);
         }},
        {"dx_over_lambda", [&](CampaignConfig&, const YAML::Node& n, const std::string& k) {
           pending.dx_over_lambda = scalar<double>(n, k);
           if (!(pending.dx_over_lambda > 0.0) || pending.dx_over_lambda > 1.0) {
             throw ConfigError("must lie in (0, 1]", line_of(n), k);
           }
         }},
        {"dz_over_lambda", [&](CampaignConfig&, const YAML::Node& n, const std::string& k) {
           pending.dz_over_lambda = scalar<double>(n, k);
           if (!(pending.dz_over_lambda > 0.0) || pending.dz_over_lambda > 1.0) {
             throw ConfigError("must lie in (0, 1]", line_of(n), k);
           }
         }}}},
      {"link",
       {{"G_b_db", [&](CampaignConfig&, const YAML::Node& n, const std::string& k) {
           budget.bs_gain = db_to_linear(scalar<double>(n, k));
         }},
        {"G_k_db", [&](CampaignConfig&, const YAML::Node& n, const std::string& k) {
           budget.ue_gain = db_to_linear(scalar<double>(n, k));
         }},
        {"rho_b_w", [&](CampaignConfig&, const YAML::Node& n, const std::string& k) {
           budget.bs_power_w = positive(scalar<double>(n, k), n, k);
         }},
        {"rho_k_w", [&](CampaignConfig&, const YAML::Node& n, const std::string& k) {
           budget.ue_power_w = positive(scalar<double>(n, k), n, k);
         }},
        {"sigma2_dbm", [&](CampaignConfig&, const YAML::Node& n, const std::string& k) {
           budget.noise_power_w = dbm_to_watt(scalar<double>(n, k));
         }},
        {"gamma_th_db", [&](CampaignConfig&, const YAML::Node& n, const std::string& k) {
           budget.snr_threshold = db_to_linear(scalar<double>(n, k));
         }},
        {"L", [&](CampaignConfig&, const YAML::Node& n, const std::string& k) {
           budget.symbols_per_slot = scalar<int>(n, k);
           if (budget.symbols_per_slot < 1) throw ConfigError("must be >= 1", line_of(n), k);
         }}}},
      {"timing",
       {{"T", [](CampaignConfig& c, const YAML::Node& n, const std::string& k) {
           c.timing.slot = scalar<double>(n, k);
           if (!(c.timing.slot > 0.0)) throw ConfigError("must be positive", line_of(n), k);
         }},
        {"T_config", [](CampaignConfig& c, const YAML::Node& n, const std::string& k) {
           c.timing.config = scalar<double>(n, k);
           if (!(c.timing.config >= 0.0)) throw ConfigError("must be nonnegative", line_of(n), k);
         }}}},
      {"campaign",
       {{"policies", [](CampaignConfig& c, const YAML::Node& n, const std::string& k) {
           try {
             c.policies = parse_policy_list(list_text(n, k));
           } catch (const ConfigError& e) {
             throw ConfigError(e.what(), line_of(n), k);
           }
         }},
        {"k", [](CampaignConfig& c, const YAML::Node& n, const std::string& k) {
           try {
             c.ue_counts = parse_int_sweep(list_text(n, k), k);
           } catch (const ConfigError&) {
             throw ConfigError("expected a:b, a:b:step or a list of integers", line_of(n), k);
           }
           for (int v : c.ue_counts) {
             if (v < 0) throw ConfigError("K must be nonnegative", line_of(n), k);
           }
         }},
        {"s", [](CampaignConfig& c, const YAML::Node& n, const std::string& k) {
           try {
             c.config_counts = parse_int_sweep(list_text(n, k), k);
           } catch (const ConfigError&) {
             throw ConfigError("expected a:b, a:b:step or a list of integers", line_of(n), k);
           }
           for (int v : c.config_counts) {
             if (v < 1) throw ConfigError("S must be >= 1", line_of(n), k);
           }
         }},
        {"drops", [](CampaignConfig& c, const YAML::Node& n, const std::string& k) {
           c.drops = scalar<int>(n, k);
           if (c.drops < 1) throw ConfigError("must be >= 1", line_of(n), k);
         }},
        {"seed", [](CampaignConfig& c, const YAML::Node& n, const std::string& k) {
           c.seed = scalar<std::uint64_t>(n, k);
         }},
        {"placement", [](CampaignConfig& c, const YAML::Node& n, const std::string& k) {
           try {
             c.placement = parse_placement(scalar<std::string>(n, k));
           } catch (const std::invalid_argument& e) {
             throw ConfigError(e.what(), line_of(n), k);
           }
         }},
        {"square_offset_m", [](CampaignConfig& c, const YAML::Node& n, const std::string& k) {
           c.square.offset = scalar<double>(n, k);
           if (!(c.square.offset >= 0.0)) throw ConfigError("must be nonnegative", line_of(n), k);
         }},
        {"square_side_m", [](CampaignConfig& c, const YAML::Node& n, const std::string& k) {
           c.square.side = positive(scalar<double>(n, k), n, k);
         }},
        {"training", [](CampaignConfig& c, const YAML::Node& n, const std::string& k) {
           try {
             c.training = parse_training(scalar<std::string>(n, k));
           } catch (const std::invalid_argument& e) {
             throw ConfigError(e.what(), line_of(n), k);
           }
         }},
        {"on_failure", [](CampaignConfig& c, const YAML::Node& n, const std::string& k) {
           try {
             c.on_failure = parse_failed_decode(scalar<std::string>(n, k));
           } catch (const std::invalid_argument& e) {
             throw ConfigError(e.what(), line_of(n), k);
           }
         }},
        {"output", [](CampaignConfig& c, const YAML::Node& n, const std::string& k) {
           c.output = scalar<std::string>(n, k);
         }},
        {"trace", [](CampaignConfig& c, const YAML::Node& n, const std::string& k) {
           c.trace = scalar<bool>(n, k);
         }},
        {"workers", [](CampaignConfig& c, const YAML::Node& n, const std::string& k) {
           c.workers = scalar<int>(n, k);
           if (c.workers < 1) throw ConfigError("must be >= 1", line_of(n), k);
         }}}},
  };

  for (const auto& entry : root) {
    const std::string section = entry.first.as<std::string>();
    const auto known = sections.find(section);
    if (known == sections.end()) {
      throw ConfigError("unknown section", line_of(entry.first), section);
    }
    const YAML::Node& body = entry.second;
    if (body.IsNull()) continue;
    if (!body.IsMap()) throw ConfigError("section must be a mapping", line_of(body), section);
    for (const auto& item : body) {
      const std::string key = item.first.as<std::string>();
      const auto setter = known->second.find(key);
      if (setter == known->second.end()) {
        throw ConfigError("unknown key in section '" + section + "'", line_of(item.first), key);
      }
      setter->second(cfg, item.second, key);
    }
  }

  cfg.scenario.carrier = Carrier::from_frequency(pending.fc_hz);
  cfg.scenario.panel = RisPanel{pending.nx, pending.nz, pending.dx_over_lambda * cfg.scenario.carrier.wavelength(),
                                pending.dz_over_lambda * cfg.scenario.carrier.wavelength()};
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), 0, "");
  }
  return cfg;
}

CampaignConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", 0, "");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace risra
