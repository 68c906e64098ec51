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

#ifndef DRPD_STATE_H_
#define DRPD_STATE_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "drpd/lagrangian.h"
#include "drpd/types.h"

namespace drpd {

// Local copy of the primal and dual variables held by one agent, plus the
// accumulator of the stepsize-weighted running average of x.
struct AgentState {
  Vector x;
  DualVector lam;
  Vector avg_numerator;  // sum_s alpha(s) x(s)
  double weight_sum = 0.0;  // sum_s alpha(s)

  bool has_average() const { return weight_sum > 0.0; }
  // avg_numerator / weight_sum. Throws InvalidArgument when weight_sum == 0.
  Vector average() const;
};

enum class Variant {
  kDeterministic,
  kStochastic,
  kCentralizedUnregularized,
};

enum class Initialization {
  kOrigin,
  kRandomFeasible,
};

struct RunConfig {
  Variant variant = Variant::kDeterministic;
  long iterations = 1000;
  double eta = 1.0;
  // c in alpha(t) = c / sqrt(t + 1). When unset: R if eta * R <= 1/2,
  // otherwise 1 / (2 eta), the largest scale the schedule admits.
  std::optional<double> step_scale;
  std::uint64_t seed = 0;
  Initialization init = Initialization::kOrigin;
  long record_every = 10;
  int threads = 1;
  // Track the theory bounds at every iteration / record.
  bool monitor_bounds = false;

  double resolved_step_scale(double radius) const;
  // Throws InvalidArgument on bad values, including eta * alpha(0) > 1/2
  // for the regularized variants.
  void validate(double radius) const;
};

std::string to_string(Variant v);
std::string to_string(Initialization init);
// Throw InvalidArgument on unknown names.
Variant parse_variant(const std::string& name);
Initialization parse_initialization(const std::string& name);

// Metrics sampled at one iteration of a run. Columns that need data the
// run does not have (f* without a reference, ratios with zero
// denominators, the convergence bound before t = 2) hold NaN.
struct IterationRecord {
  long t = 0;
  double eps = 0.0;
  bool eps_absolute = false;  // degenerate normalizer, eps is |f - f*|
  double delta = 0.0;
  double max_lambda_norm = 0.0;
  double lambda_sq_sum = 0.0;
  double consensus_diameter = 0.0;
  double max_gap = 0.0;  // max_i f(xhat_i) - f*
  double thm2_bound = 0.0;
  double bound_margin_thm2 = 0.0;  // thm2_bound - max_gap
  double violation_sq = 0.0;
};

// Running tally of one theory bound: observed <= bound is required.
struct BoundCheck {
  std::string name;
  long checks = 0;
  long violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  double observed_at_worst = 0.0;
  double bound_at_worst = 0.0;
  long t_at_worst = -1;

  void observe(long t, double observed, double bound);
  bool ok() const { return violations == 0; }
};

struct MonitorReport {
  bool enabled = false;
  BoundCheck lambda_norm{"lambda_norm_sq"};
  BoundCheck grad_x{"grad_x_norm"};
  BoundCheck grad_lambda{"grad_lambda_sq"};
  BoundCheck consensus{"consensus_distance"};
  // The convergence bound for the deterministic variant, the
  // high-probability bound for the stochastic one.
  BoundCheck objective_gap{"objective_gap"};

  std::vector<const BoundCheck*> checks() const;
  bool all_ok() const;
};

struct Trace {
  RunConfig config;
  double step_scale = 0.0;
  int n = 0;
  int d = 0;
  int m = 0;
  double sigma2 = 0.0;
  std::optional<double> f_star;
  std::vector<IterationRecord> records;
  std::vector<AgentState> initial_states;
  std::vector<AgentState> final_states;
  MonitorReport monitors;
};

}  // namespace drpd

#endif  // DRPD_STATE_H_
