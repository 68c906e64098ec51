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

#ifndef DRPD_ENGINE_H_
#define DRPD_ENGINE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "drpd/consensus.h"
#include "drpd/lagrangian.h"
#include "drpd/problem.h"
#include "drpd/reference.h"
#include "drpd/state.h"
#include "drpd/types.h"

namespace drpd {

// Largest ||lam|| tolerated before a run is declared divergent.
inline constexpr double kDivergenceLambdaNorm = 1e6;

// Thrown when an iterate stops being finite or the multipliers blow up.
// Carries everything recorded up to the failure.
class DivergenceError : public NumericalError {
 public:
  DivergenceError(const std::string& what, Trace partial)
      : NumericalError(what), partial_(std::move(partial)) {}
  const Trace& partial_trace() const { return partial_; }

 private:
  Trace partial_;
};

// R x / max(R, ||x||).
Vector project_ball(const Vector& x, double radius);

// Componentwise max(0, v_k).
DualVector project_orthant(const Vector& v);

// c / sqrt(t + 1).
double stepsize(long t, double step_scale);
double stepsize(long t, const RunConfig& cfg, double radius);

// Uniform draws for the stochastic variant, keyed by (seed, agent,
// iteration) so a run does not depend on scheduling or thread count.
class SamplingStreams {
 public:
  explicit SamplingStreams(std::uint64_t seed) : seed_(seed) {}
  // In [0, 1).
  double uniform(int agent, long t) const;

 private:
  std::uint64_t seed_;
};

// Largest oracle-derived quantities seen during one step, for the subgradient
// bound monitors. Margins are bound - observed (negative means violated).
struct StepDiagnostics {
  double max_grad_x_norm = 0.0;
  double min_grad_x_margin = 0.0;
  double max_grad_lambda_sq = 0.0;
  double min_grad_lambda_margin = 0.0;
};

// x_i(0) and lam_i(0) for every agent; the running average starts as
// alpha(0) x_i(0).
std::vector<AgentState> initial_states(const ProblemSpec& p,
                                       const RunConfig& cfg);

// One synchronous iteration of the deterministic method. Every agent reads
// the iteration-t snapshot `states`, the returned vector holds t+1.
std::vector<AgentState> step_deterministic(std::span<const AgentState> states,
                                           const ProblemSpec& p,
                                           const ConsensusMatrix& w, long t,
                                           const RunConfig& cfg,
                                           StepDiagnostics* diag = nullptr);

// Same as step_deterministic except the primal direction uses one sampled
// constraint, K_i(t) ~ sampling_distribution(lam_i(t)).
std::vector<AgentState> step_stochastic(std::span<const AgentState> states,
                                        const ProblemSpec& p,
                                        const ConsensusMatrix& w, long t,
                                        const RunConfig& cfg,
                                        const SamplingStreams& streams,
                                        StepDiagnostics* diag = nullptr);

// Runs cfg.iterations steps from initial_states and records metrics every
// cfg.record_every steps (and at the last step). With a reference the eps
// and convergence-bound columns are filled in. A centralized_unregularized config
// is forwarded to run_centralized_unregularized.
Trace run(const ProblemSpec& p, const ConsensusMatrix& w, const RunConfig& cfg,
          const ReferenceSolution* ref = nullptr);

// Single agent holding f = (1/n) sum f_i, eta = 0, no consensus step.
Trace run_centralized_unregularized(const ProblemSpec& p, const RunConfig& cfg,
                                    const ReferenceSolution* ref = nullptr);

// The one-agent problem the centralized baseline runs on.
ProblemSpec centralized_problem(const ProblemSpec& p);

}  // namespace drpd

#endif  // DRPD_ENGINE_H_
