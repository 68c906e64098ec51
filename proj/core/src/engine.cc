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

#include "drpd/engine.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <thread>

#include "drpd/metrics.h"

namespace drpd {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Slack added to objective-gap bounds for the approximate f*.
constexpr double kReferenceSlack = 1e-4;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Runs body(i) for i in [0, count). Work is split in contiguous blocks; each
// index is handled by exactly one thread, so results do not depend on the
// thread count.
template <typename Body>
void parallel_for(int count, int threads, Body&& body) {
  threads = std::clamp(threads, 1, std::max(count, 1));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const int block = (count + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        const int end = std::min(count, (w + 1) * block);
        for (int i = w * block; i < end; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct AgentDirection {
  Vector y;
  Vector gamma;
  double grad_x_norm = 0.0;
  double grad_x_margin = 0.0;
  double grad_lambda_sq = 0.0;
  double grad_lambda_margin = 0.0;
};

double effective_eta(const RunConfig& cfg) {
  return cfg.variant == Variant::kCentralizedUnregularized ? 0.0 : cfg.eta;
}

std::vector<AgentState> step_impl(std::span<const AgentState> states,
                                  const ProblemSpec& p,
                                  const ConsensusMatrix& w, long t,
                                  const RunConfig& cfg,
                                  const SamplingStreams* streams,
                                  StepDiagnostics* diag) {
  const int n = static_cast<int>(states.size());
  if (w.size() != n || p.n != n) {
    throw InvalidArgument("step: agent count differs between states, W, p");
  }
  const double scale = cfg.resolved_step_scale(p.radius);
  const double alpha = stepsize(t, scale);
  const double alpha_next = stepsize(t + 1, scale);
  const double eta = effective_eta(cfg);
  const bool track = diag != nullptr && eta > 0.0;
  const double x_bound = track ? grad_x_bound(p, n, eta) : 0.0;

  std::vector<AgentDirection> dirs(n);
  parallel_for(n, cfg.threads, [&](int i) {
    const AgentState& s = states[i];
    const LocalEvaluation local = evaluate_local(p, i, s.x);
    Vector direction;
    if (streams != nullptr) {
      const int k = sample_index(sampling_distribution(s.lam),
                                 streams->uniform(i, t));
      direction = stochastic_grad_x(local, s.lam, k);
    } else {
      direction = grad_x(local, s.lam);
    }
    const Vector dual_direction = grad_lambda(local, s.lam, eta);
    AgentDirection& out = dirs[i];
    out.y = s.x - alpha * direction;
    out.gamma = s.lam.values() + alpha * dual_direction;
    if (track) {
      out.grad_x_norm = direction.norm();
      out.grad_x_margin = x_bound - out.grad_x_norm;
      out.grad_lambda_sq = dual_direction.squaredNorm();
      out.grad_lambda_margin =
          grad_lambda_sq_bound(p, eta, s.lam.squared_norm()) -
          out.grad_lambda_sq;
    }
  });

  std::vector<AgentState> next(n);
  parallel_for(n, cfg.threads, [&](int i) {
    Vector mixed_y = Vector::Zero(p.d);
    Vector mixed_gamma = Vector::Zero(p.m);
    for (int j : w.support(i)) {
      mixed_y += w(i, j) * dirs[j].y;
      mixed_gamma += w(i, j) * dirs[j].gamma;
    }
    AgentState& s = next[i];
    s.x = project_ball(mixed_y, p.radius);
    s.lam = project_orthant(mixed_gamma);
    s.avg_numerator = states[i].avg_numerator + alpha_next * s.x;
    s.weight_sum = states[i].weight_sum + alpha_next;
  });

  if (track) {
    StepDiagnostics d;
    d.min_grad_x_margin = std::numeric_limits<double>::infinity();
    d.min_grad_lambda_margin = std::numeric_limits<double>::infinity();
    for (const auto& dir : dirs) {
      d.max_grad_x_norm = std::max(d.max_grad_x_norm, dir.grad_x_norm);
      d.max_grad_lambda_sq = std::max(d.max_grad_lambda_sq, dir.grad_lambda_sq);
      d.min_grad_x_margin = std::min(d.min_grad_x_margin, dir.grad_x_margin);
      d.min_grad_lambda_margin =
          std::min(d.min_grad_lambda_margin, dir.grad_lambda_margin);
    }
    *diag = d;
  }
  return next;
}

// Largest s in [0, 1] with g(s v) <= 0, assuming g(0) <= 0.
Vector scale_into_feasible(const ProblemSpec& p, const Vector& v) {
  auto feasible = [&](const Vector& x) {
    return (p.constraint_values(x).array() <= 0.0).all();
  };
  if (!feasible(Vector::Zero(p.d))) {
    throw InvalidArgument("random_feasible init needs a feasible origin");
  }
  if (feasible(v)) return v;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (feasible(mid * v) ? lo : hi) = mid;
  }
  return lo * v;
}

bool finite_state(const AgentState& s) {
  return s.x.allFinite() && s.avg_numerator.allFinite() &&
         std::isfinite(s.weight_sum);
}

class Runner {
 public:
  Runner(const ProblemSpec& p, const ConsensusMatrix& w, const RunConfig& cfg,
         const ReferenceSolution* ref)
      : p_(p), w_(w), cfg_(cfg), ref_(ref), eta_(effective_eta(cfg)) {
    trace_.config = cfg;
    trace_.step_scale = cfg.resolved_step_scale(p.radius);
    trace_.n = p.n;
    trace_.d = p.d;
    trace_.m = p.m;
    trace_.sigma2 = w.sigma2();
    if (ref != nullptr) trace_.f_star = ref->f_star;
    trace_.monitors.enabled = cfg.monitor_bounds && eta_ > 0.0;
    if (ref != nullptr) slack_ = std::max(kReferenceSlack, ref->residual);
  }

  Trace execute() {
    std::vector<AgentState> states = initial_states(p_, cfg_);
    trace_.initial_states = states;
    initial_snapshot_ = snapshot_averages(p_, states);
    record(0, states);
    const SamplingStreams streams(cfg_.seed);
    const bool stochastic = cfg_.variant == Variant::kStochastic;
    for (long t = 0; t < cfg_.iterations; ++t) {
      StepDiagnostics diag;
      StepDiagnostics* diag_ptr = trace_.monitors.enabled ? &diag : nullptr;
      std::vector<AgentState> next;
      try {
        next = step_impl(states, p_, w_, t, cfg_,
                         stochastic ? &streams : nullptr, diag_ptr);
      } catch (const NumericalError& e) {
        fail(states, std::string("step failed: ") + e.what());
      }
      for (const auto& s : next) {
        if (!finite_state(s)) fail(states, "non-finite iterate at t=" +
                                               std::to_string(t + 1));
        if (s.lam.norm() > kDivergenceLambdaNorm) {
          fail(states, "||lambda|| exceeded 1e6 at t=" + std::to_string(t + 1));
        }
      }
      if (trace_.monitors.enabled) {
        // Subgradient bounds are checked at the iterate of step t.
        trace_.monitors.grad_x.observe(t, diag.max_grad_x_norm,
                                       diag.max_grad_x_norm +
                                           diag.min_grad_x_margin);
        trace_.monitors.grad_lambda.observe(
            t, diag.max_grad_lambda_sq,
            diag.max_grad_lambda_sq + diag.min_grad_lambda_margin);
        trace_.monitors.lambda_norm.observe(t + 1, lambda_sq_sum(next),
                                            lambda_sq_sum_bound(p_, p_.n, eta_));
      }
      states = std::move(next);
      const long done = t + 1;
      if (done % cfg_.record_every == 0 || done == cfg_.iterations) {
        record(done, states);
      }
    }
    trace_.final_states = std::move(states);
    return std::move(trace_);
  }

 private:
  [[noreturn]] void fail(const std::vector<AgentState>& last,
                         const std::string& why) {
    trace_.final_states = last;
    throw DivergenceError(why, std::move(trace_));
  }

  void record(long t, const std::vector<AgentState>& states) {
    IterationRecord r;
    r.t = t;
    const AverageSnapshot snap = snapshot_averages(p_, states);
    const int n = p_.n;
    if (trace_.f_star) {
      const EpsilonResult eps = epsilon_G(snap, initial_snapshot_, *trace_.f_star);
      r.eps = eps.value;
      r.eps_absolute = eps.absolute;
      r.max_gap = -std::numeric_limits<double>::infinity();
      for (double f : snap.objective) {
        r.max_gap = std::max(r.max_gap, f - *trace_.f_star);
      }
    } else {
      r.eps = kNaN;
      r.max_gap = kNaN;
    }
    try {
      r.delta = delta_G(snap, initial_snapshot_);
    } catch (const InvalidArgument&) {
      r.delta = kNaN;
    }
    r.violation_sq = violation_functional(snap);
    r.max_lambda_norm = max_lambda_norm(states);
    r.lambda_sq_sum = lambda_sq_sum(states);
    r.consensus_diameter = consensus_diameter(states);
    if (t >= 2 && eta_ > 0.0 && w_.sigma2() < 1.0) {
      r.thm2_bound = thm2_bound(p_, w_.sigma2(), eta_, t, n);
      r.bound_margin_thm2 = r.thm2_bound - r.max_gap;
    } else {
      r.thm2_bound = kNaN;
      r.bound_margin_thm2 = kNaN;
    }

    if (trace_.monitors.enabled) {
      if (cfg_.iterations >= 1 && w_.sigma2() < 1.0) {
        const double alpha_t = stepsize(t, trace_.step_scale);
        trace_.monitors.consensus.observe(
            t, r.consensus_diameter,
            consensus_distance_bound(p_, n, w_.sigma2(), eta_,
                                     cfg_.iterations, alpha_t));
      }
      if (t >= 2 && trace_.f_star && w_.sigma2() < 1.0) {
        const double bound =
            cfg_.variant == Variant::kStochastic
                ? thm4_high_probability_bound(p_, w_.sigma2(), eta_, t, n)
                : r.thm2_bound;
        trace_.monitors.objective_gap.observe(t, r.max_gap, bound + slack_);
      }
    }
    trace_.records.push_back(r);
  }

  const ProblemSpec& p_;
  const ConsensusMatrix& w_;
  const RunConfig& cfg_;
  const ReferenceSolution* ref_;
  double eta_;
  double slack_ = kReferenceSlack;
  AverageSnapshot initial_snapshot_;
  Trace trace_;
};

}  // namespace

Vector project_ball(const Vector& x, double radius) {
  if (!(radius > 0.0)) throw InvalidArgument("project_ball: R must be > 0");
  const double norm = x.norm();
  if (norm <= radius) return x;
  return (radius / norm) * x;
}

DualVector project_orthant(const Vector& v) {
  return DualVector(v.cwiseMax(0.0));
}

double stepsize(long t, double step_scale) {
  if (t < 0) throw InvalidArgument("stepsize: t must be >= 0");
  return step_scale / std::sqrt(static_cast<double>(t) + 1.0);
}

double stepsize(long t, const RunConfig& cfg, double radius) {
  return stepsize(t, cfg.resolved_step_scale(radius));
}

double SamplingStreams::uniform(int agent, long t) const {
  std::uint64_t h = splitmix64(seed_);
  h = splitmix64(h ^ static_cast<std::uint64_t>(agent));
  h = splitmix64(h ^ static_cast<std::uint64_t>(t));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::vector<AgentState> initial_states(const ProblemSpec& p,
                                       const RunConfig& cfg) {
  Vector x0 = Vector::Zero(p.d);
  if (cfg.init == Initialization::kRandomFeasible) {
    // One point shared by every agent, drawn from its own stream.
    std::mt19937_64 rng(splitmix64(cfg.seed ^ 0x5eed1a17ULL));
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(p.d);
    do {
      for (int k = 0; k < p.d; ++k) v[k] = normal(rng);
    } while (v.norm() == 0.0);
    x0 = scale_into_feasible(p, p.radius * v / v.norm());
  }
  const double alpha0 = stepsize(0, cfg.resolved_step_scale(p.radius));
  std::vector<AgentState> states(p.n);
  for (auto& s : states) {
    s.x = x0;
    s.lam = DualVector::zeros(p.m);
    s.avg_numerator = alpha0 * x0;
    s.weight_sum = alpha0;
  }
  return states;
}

std::vector<AgentState> step_deterministic(std::span<const AgentState> states,
                                           const ProblemSpec& p,
                                           const ConsensusMatrix& w, long t,
                                           const RunConfig& cfg,
                                           StepDiagnostics* diag) {
  return step_impl(states, p, w, t, cfg, nullptr, diag);
}

std::vector<AgentState> step_stochastic(std::span<const AgentState> states,
                                        const ProblemSpec& p,
                                        const ConsensusMatrix& w, long t,
                                        const RunConfig& cfg,
                                        const SamplingStreams& streams,
                                        StepDiagnostics* diag) {
  return step_impl(states, p, w, t, cfg, &streams, diag);
}

Trace run(const ProblemSpec& p, const ConsensusMatrix& w, const RunConfig& cfg,
          const ReferenceSolution* ref) {
  if (cfg.variant == Variant::kCentralizedUnregularized) {
    return run_centralized_unregularized(p, cfg, ref);
  }
  p.validate();
  cfg.validate(p.radius);
  if (w.size() != p.n) {
    throw InvalidArgument("run: consensus matrix size differs from n");
  }
  return Runner(p, w, cfg, ref).execute();
}

ProblemSpec centralized_problem(const ProblemSpec& p) {
  p.validate();
  ProblemSpec single = p;
  single.n = 1;
  single.objectives = {[f = p](const Vector& x) {
    return f.cumulative_objective(x);
  }};
  single.cumulative = nullptr;
  return single;
}

Trace run_centralized_unregularized(const ProblemSpec& p, const RunConfig& cfg,
                                    const ReferenceSolution* ref) {
  RunConfig single_cfg = cfg;
  single_cfg.variant = Variant::kCentralizedUnregularized;
  single_cfg.eta = 0.0;
  single_cfg.validate(p.radius);
  const ProblemSpec single = centralized_problem(p);
  const ConsensusMatrix identity(Matrix::Identity(1, 1));
  return Runner(single, identity, single_cfg, ref).execute();
}

}  // namespace drpd
