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

#include "drpd/state.h"

#include <cmath>
#include <string>

namespace drpd {

Vector AgentState::average() const {
  if (!has_average()) {
    throw InvalidArgument("running average is empty (weight_sum == 0)");
  }
  return avg_numerator / weight_sum;
}

double RunConfig::resolved_step_scale(double radius) const {
  if (step_scale) return *step_scale;
  if (variant == Variant::kCentralizedUnregularized) return radius;
  return eta * radius <= 0.5 ? radius : 0.5 / eta;
}

void RunConfig::validate(double radius) const {
  if (iterations < 0) throw InvalidArgument("run: iterations must be >= 0");
  if (record_every < 1) throw InvalidArgument("run: record_every must be >= 1");
  if (threads < 1) throw InvalidArgument("run: threads must be >= 1");
  if (step_scale && !(*step_scale > 0.0)) {
    throw InvalidArgument("run: step_scale must be positive");
  }
  if (variant == Variant::kCentralizedUnregularized) return;
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InvalidArgument("run: eta must be positive");
  }
  const double alpha0 = resolved_step_scale(radius);
  if (eta * alpha0 > 0.5) {
    throw InvalidArgument("run: eta * alpha(0) = " +
                          std::to_string(eta * alpha0) +
                          " exceeds 1/2; lower eta or step_scale");
  }
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::kDeterministic:
      return "deterministic";
    case Variant::kStochastic:
      return "stochastic";
    case Variant::kCentralizedUnregularized:
      return "centralized_unregularized";
  }
  return "unknown";
}

std::string to_string(Initialization init) {
  return init == Initialization::kOrigin ? "origin" : "random_feasible";
}

Variant parse_variant(const std::string& name) {
  if (name == "deterministic") return Variant::kDeterministic;
  if (name == "stochastic") return Variant::kStochastic;
  if (name == "centralized_unregularized") {
    return Variant::kCentralizedUnregularized;
  }
  throw InvalidArgument("unknown variant '" + name + "'");
}

Initialization parse_initialization(const std::string& name) {
  if (name == "origin") return Initialization::kOrigin;
  if (name == "random_feasible") return Initialization::kRandomFeasible;
  throw InvalidArgument("unknown initialization '" + name + "'");
}

void BoundCheck::observe(long t, double observed, double bound) {
  ++checks;
  const double margin = bound - observed;
  if (!(margin >= 0.0)) ++violations;
  if (margin < worst_margin || t_at_worst < 0) {
    worst_margin = margin;
    observed_at_worst = observed;
    bound_at_worst = bound;
    t_at_worst = t;
  }
}

std::vector<const BoundCheck*> MonitorReport::checks() const {
  return {&lambda_norm, &grad_x, &grad_lambda, &consensus, &objective_gap};
}

bool MonitorReport::all_ok() const {
  for (const BoundCheck* c : checks()) {
    if (!c->ok()) return false;
  }
  return true;
}

}  // namespace drpd
