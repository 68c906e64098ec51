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

#ifndef DRPD_TOOLS_CONFIG_H_
#define DRPD_TOOLS_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drpd/consensus.h"
#include "drpd/graph.h"
#include "drpd/problem.h"
#include "drpd/state.h"

namespace drpd::cli {

// Bad config values, unknown keys, unreadable config files. Exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ProblemSection {
  std::string family = "logistic";
  int n = 100;
  int d = 5;
  double l = 0.1;
  double u = 0.1;
  std::uint64_t data_seed = 1;
};

struct GraphSection {
  std::string family = "watts_strogatz";
  int k = 20;
  double theta = 0.02;
  double p = 0.06;
  int rows = 0;  // lattice8; 0 means derive from problem.n
  int cols = 0;
  int bridges = 1;
  std::uint64_t seed = 1;
};

struct ReferenceSection {
  long iterations = 1000000;
  std::uint64_t seed = 1;
};

// Everything needed to reproduce one experiment. The agent count of the
// graph is problem.n.
struct ExperimentConfig {
  ProblemSection problem;
  GraphSection graph;
  std::string weights = "lazy_metropolis";
  RunConfig run;
  ReferenceSection reference;
  std::string output_dir = "runs/default";

  // Flat dotted key -> text value, every key present.
  std::map<std::string, std::string> to_map() const;
  // Starts from defaults and applies each entry. Unknown keys throw.
  static ExperimentConfig from_map(const std::map<std::string, std::string>& m);

  // Overwrites one field from text. Throws ConfigError.
  void set(const std::string& key, const std::string& value);

  // Range and name checks that do not need to build anything.
  void validate() const;
};

const std::vector<std::string>& config_keys();

// "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> parse_key_values(const std::string& text);
std::string format_key_values(const std::map<std::string, std::string>& m);

// Reads a key/value file, or a run manifest (.json) whose "config" object
// holds the same flat map.
ExperimentConfig load_config(const std::filesystem::path& path);

// "key=value" from --set.
std::pair<std::string, std::string> split_assignment(const std::string& s);

GraphTopology build_graph(const ExperimentConfig& cfg);
ConsensusMatrix build_weights(const ExperimentConfig& cfg,
                              const GraphTopology& g);
SyntheticDataset build_dataset(const ExperimentConfig& cfg);
ProblemSpec build_problem(const ExperimentConfig& cfg,
                          const SyntheticDataset& data);

// Hex FNV-1a digest of the inputs that determine f*.
std::string reference_cache_key(const ExperimentConfig& cfg);

// output_dir, placed under $DRPD_OUTPUT_ROOT when that is set and the path
// is relative.
std::filesystem::path resolve_output_dir(const std::string& dir);

}  // namespace drpd::cli

#endif  // DRPD_TOOLS_CONFIG_H_
