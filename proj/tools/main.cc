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

#include <iostream>

#include "CLI11.hpp"
#include "commands.h"
#include "drpd/engine.h"

namespace {

void add_common(CLI::App* cmd, drpd::cli::CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path,
                  "Key/value config file or run manifest (.json)");
  cmd->add_option("--set", opts.sets, "Override one key: key=value")
      ->allow_extra_args(false);
  cmd->add_option("--out", opts.out, "Output directory");
  cmd->add_option("--threads", opts.threads, "Worker threads per run")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--record-every", opts.record_every, "Metric stride")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace drpd::cli;
  CLI::App app{"Distributed regularized primal-dual experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DRPD_VERSION);

  CommonOptions graph_opts, run_opts, sweep_opts;
  auto* graph_cmd = app.add_subcommand(
      "generate-graph", "Write edge list, weights and spectral report");
  add_common(graph_cmd, graph_opts);
  auto* run_cmd = app.add_subcommand("run", "Run one experiment");
  add_common(run_cmd, run_opts);

  auto* sweep_cmd = app.add_subcommand("sweep", "Run one experiment per value");
  add_common(sweep_cmd, sweep_opts);
  std::string parameter;
  std::vector<std::string> values;
  sweep_cmd->add_option("--param", parameter, "eta|n|T|graph|variant|r")
      ->required();
  sweep_cmd->add_option("--values", values, "Comma separated values")
      ->required();

  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suites");
  std::string level = "quick";
  verify_cmd->add_option("level", level, "quick|full")
      ->check(CLI::IsMember({"quick", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*graph_cmd) return cmd_generate_graph(resolve_config(graph_opts), std::cout);
    if (*run_cmd) return cmd_run(resolve_config(run_opts), std::cout);
    if (*sweep_cmd) {
      return cmd_sweep(resolve_config(sweep_opts), parameter, values, std::cout);
    }
    if (*verify_cmd) {
      return cmd_verify(level == "full" ? VerifyLevel::kFull : VerifyLevel::kQuick,
                        std::cout);
    }
  } catch (const drpd::DivergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const drpd::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const drpd::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
