// Copyright 2026 The drpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "drpd/io.h"
#include "json.hpp"

namespace drpd::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_integer(const std::string& key, const std::string& text) {
  T value{};
  const std::string s = trim(text);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  }
  return value;
}

double parse_real(const std::string& key, const std::string& text) {
  double value = 0.0;
  const std::string s = trim(text);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() ||
      !std::isfinite(value)) {
    throw ConfigError(key + ": expected a finite number, got '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

std::string one_of(const std::string& key, const std::string& text,
                   std::initializer_list<const char*> allowed) {
  const std::string s = trim(text);
  for (const char* a : allowed) {
    if (s == a) return s;
  }
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : "|") + a;
  throw ConfigError(key + ": unknown value '" + text + "' (expected " + list +
                    ")");
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "problem.family",   "problem.n",        "problem.d",
      "problem.l",        "problem.u",        "problem.data_seed",
      "graph.family",     "graph.k",          "graph.theta",
      "graph.p",          "graph.rows",       "graph.cols",
      "graph.bridges",    "graph.seed",       "weights",
      "run.variant",      "run.T",            "run.eta",
      "run.step_scale",   "run.seed",         "run.init",
      "run.record_every", "run.threads",      "run.monitor_bounds",
      "reference.iterations", "reference.seed", "output_dir"};
  return keys;
}

std::map<std::string, std::string> ExperimentConfig::to_map() const {
  std::map<std::string, std::string> m;
  m["problem.family"] = problem.family;
  m["problem.n"] = std::to_string(problem.n);
  m["problem.d"] = std::to_string(problem.d);
  m["problem.l"] = format_double(problem.l);
  m["problem.u"] = format_double(problem.u);
  m["problem.data_seed"] = std::to_string(problem.data_seed);
  m["graph.family"] = graph.family;
  m["graph.k"] = std::to_string(graph.k);
  m["graph.theta"] = format_double(graph.theta);
  m["graph.p"] = format_double(graph.p);
  m["graph.rows"] = std::to_string(graph.rows);
  m["graph.cols"] = std::to_string(graph.cols);
  m["graph.bridges"] = std::to_string(graph.bridges);
  m["graph.seed"] = std::to_string(graph.seed);
  m["weights"] = weights;
  m["run.variant"] = to_string(run.variant);
  m["run.T"] = std::to_string(run.iterations);
  m["run.eta"] = format_double(run.eta);
  m["run.step_scale"] = run.step_scale ? format_double(*run.step_scale) : "auto";
  m["run.seed"] = std::to_string(run.seed);
  m["run.init"] = to_string(run.init);
  m["run.record_every"] = std::to_string(run.record_every);
  m["run.threads"] = std::to_string(run.threads);
  m["run.monitor_bounds"] = run.monitor_bounds ? "true" : "false";
  m["reference.iterations"] = std::to_string(reference.iterations);
  m["reference.seed"] = std::to_string(reference.seed);
  m["output_dir"] = output_dir;
  return m;
}

ExperimentConfig ExperimentConfig::from_map(
    const std::map<std::string, std::string>& m) {
  ExperimentConfig cfg;
  for (const auto& [key, value] : m) cfg.set(key, value);
  return cfg;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "problem.family") {
    problem.family = one_of(key, value, {"logistic", "hinge"});
  } else if (key == "problem.n") {
    problem.n = parse_integer<int>(key, value);
  } else if (key == "problem.d") {
    problem.d = parse_integer<int>(key, value);
  } else if (key == "problem.l") {
    problem.l = parse_real(key, value);
  } else if (key == "problem.u") {
    problem.u = parse_real(key, value);
  } else if (key == "problem.data_seed") {
    problem.data_seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "graph.family") {
    graph.family = one_of(key, value,
                          {"watts_strogatz", "erdos_renyi", "lattice8", "barbell"});
  } else if (key == "graph.k") {
    graph.k = parse_integer<int>(key, value);
  } else if (key == "graph.theta") {
    graph.theta = parse_real(key, value);
  } else if (key == "graph.p") {
    graph.p = parse_real(key, value);
  } else if (key == "graph.rows") {
    graph.rows = parse_integer<int>(key, value);
  } else if (key == "graph.cols") {
    graph.cols = parse_integer<int>(key, value);
  } else if (key == "graph.bridges") {
    graph.bridges = parse_integer<int>(key, value);
  } else if (key == "graph.seed") {
    graph.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "weights") {
    weights = one_of(key, value, {"lazy_metropolis", "laplacian"});
  } else if (key == "run.variant") {
    try {
      run.variant = parse_variant(trim(value));
    } catch (const InvalidArgument& e) {
      throw ConfigError(key + ": " + e.what());
    }
  } else if (key == "run.T") {
    run.iterations = parse_integer<long>(key, value);
  } else if (key == "run.eta") {
    run.eta = parse_real(key, value);
  } else if (key == "run.step_scale") {
    if (trim(value) == "auto" || trim(value).empty()) {
      run.step_scale.reset();
    } else {
      run.step_scale = parse_real(key, value);
    }
  } else if (key == "run.seed") {
    run.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "run.init") {
    try {
      run.init = parse_initialization(trim(value));
    } catch (const InvalidArgument& e) {
      throw ConfigError(key + ": " + e.what());
    }
  } else if (key == "run.record_every") {
    run.record_every = parse_integer<long>(key, value);
  } else if (key == "run.threads") {
    run.threads = parse_integer<int>(key, value);
  } else if (key == "run.monitor_bounds") {
    run.monitor_bounds = parse_bool(key, value);
  } else if (key == "reference.iterations") {
    reference.iterations = parse_integer<long>(key, value);
  } else if (key == "reference.seed") {
    reference.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "output_dir") {
    if (trim(value).empty()) throw ConfigError("output_dir: empty path");
    output_dir = trim(value);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void ExperimentConfig::validate() const {
  if (problem.n < 1) throw ConfigError("problem.n must be >= 1");
  if (problem.d < 1) throw ConfigError("problem.d must be >= 1");
  if (!(problem.l > 0.0) || !(problem.u > 0.0)) {
    throw ConfigError("problem.l and problem.u must be > 0");
  }
  if (reference.iterations < 1) {
    throw ConfigError("reference.iterations must be >= 1");
  }
  if (run.threads < 1) throw ConfigError("run.threads must be >= 1");
  if (run.record_every < 1) throw ConfigError("run.record_every must be >= 1");
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> m;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) +
                        ": expected 'key = value'");
    }
    m[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return m;
}

std::string format_key_values(const std::map<std::string, std::string>& m) {
  std::string out;
  for (const auto& [k, v] : m) out += k + " = " + v + "\n";
  return out;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  if (path.extension() == ".json") {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("bad manifest '" + path.string() + "': " + e.what());
    }
    if (!j.contains("config") || !j["config"].is_object()) {
      throw ConfigError("manifest has no config object");
    }
    std::map<std::string, std::string> m;
    for (const auto& [k, v] : j["config"].items()) {
      if (!v.is_string()) throw ConfigError("manifest key '" + k + "' is not text");
      m[k] = v.get<std::string>();
    }
    return ExperimentConfig::from_map(m);
  }
  return ExperimentConfig::from_map(parse_key_values(buf.str()));
}

std::pair<std::string, std::string> split_assignment(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("--set expects key=value, got '" + s + "'");
  }
  return {trim(s.substr(0, eq)), trim(s.substr(eq + 1))};
}

GraphTopology build_graph(const ExperimentConfig& cfg) {
  const int n = cfg.problem.n;
  const auto& g = cfg.graph;
  try {
    if (g.family == "watts_strogatz") {
      return generate_watts_strogatz(n, g.k, g.theta, g.seed);
    }
    if (g.family == "erdos_renyi") return generate_erdos_renyi(n, g.p, g.seed);
    if (g.family == "barbell") return generate_barbell(n, g.bridges);
    if (g.family == "lattice8") {
      int rows = g.rows;
      int cols = g.cols;
      if (rows == 0 && cols == 0) {
        rows = static_cast<int>(std::sqrt(static_cast<double>(n)));
        while (rows > 1 && n % rows != 0) --rows;
        cols = rows > 0 ? n / rows : 0;
      } else if (rows * cols != n) {
        throw ConfigError("graph.rows * graph.cols must equal problem.n");
      }
      return generate_lattice8(rows, cols);
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("graph: ") + e.what());
  }
  throw ConfigError("graph.family: unknown value '" + g.family + "'");
}

ConsensusMatrix build_weights(const ExperimentConfig& cfg,
                              const GraphTopology& g) {
  if (cfg.weights == "lazy_metropolis") return lazy_metropolis(g);
  if (cfg.weights == "laplacian") return laplacian_weights(g);
  throw ConfigError("weights: unknown value '" + cfg.weights + "'");
}

SyntheticDataset build_dataset(const ExperimentConfig& cfg) {
  return generate_dataset(cfg.problem.n, cfg.problem.d, cfg.problem.data_seed);
}

ProblemSpec build_problem(const ExperimentConfig& cfg,
                          const SyntheticDataset& data) {
  try {
    if (cfg.problem.family == "hinge") {
      return build_hinge_problem(data, cfg.problem.l, cfg.problem.u);
    }
    return build_logistic_problem(data, cfg.problem.l, cfg.problem.u);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("problem: ") + e.what());
  }
}

std::string reference_cache_key(const ExperimentConfig& cfg) {
  std::ostringstream key;
  key << cfg.problem.family << '|' << cfg.problem.data_seed << '|'
      << cfg.problem.n << '|' << cfg.problem.d << '|'
      << format_double(cfg.problem.l) << '|' << format_double(cfg.problem.u)
      << '|' << cfg.reference.iterations << '|' << cfg.reference.seed;
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a(key.str())));
  return hex;
}

std::filesystem::path resolve_output_dir(const std::string& dir) {
  std::filesystem::path p(dir);
  const char* root = std::getenv("DRPD_OUTPUT_ROOT");
  if (root != nullptr && *root != '\0' && p.is_relative()) {
    return std::filesystem::path(root) / p;
  }
  return p;
}

}  // namespace drpd::cli
