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

#ifndef DRPD_TOOLS_COMMANDS_H_
#define DRPD_TOOLS_COMMANDS_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.h"

namespace drpd::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitConfig = 2,
  kExitDiverged = 3,
};

// Flags shared by every subcommand.
struct CommonOptions {
  std::optional<std::string> config_path;
  std::vector<std::string> sets;
  std::optional<std::string> out;
  std::optional<int> threads;
  std::optional<long> record_every;
};

// Defaults, then the config file, then --set, then the dedicated flags.
ExperimentConfig resolve_config(const CommonOptions& opts);

int cmd_generate_graph(const ExperimentConfig& cfg, std::ostream& log);
int cmd_run(const ExperimentConfig& cfg, std::ostream& log);
int cmd_sweep(const ExperimentConfig& cfg, const std::string& parameter,
              const std::vector<std::string>& values, std::ostream& log);

enum class VerifyLevel { kQuick, kFull };
int cmd_verify(VerifyLevel level, std::ostream& log);

// Sweepable parameters: eta, n, T, graph, variant, r (eta = T^-r).
const std::vector<std::string>& sweep_parameters();

// Applies one sweep value to a copy of cfg.
ExperimentConfig apply_sweep_value(const ExperimentConfig& cfg,
                                   const std::string& parameter,
                                   const std::string& value);

}  // namespace drpd::cli

#endif  // DRPD_TOOLS_COMMANDS_H_
