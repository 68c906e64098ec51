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

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "commands.h"
#include "drpd/engine.h"
#include "drpd/io.h"
#include "drpd/metrics.h"
#include "drpd/reference.h"

namespace drpd::cli {
namespace {

struct CheckResult {
  std::string name;
  bool ok = true;
  std::string detail;
};

using Check = std::function<CheckResult()>;

Vector random_vector(std::mt19937_64& rng, int size, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector v(size);
  for (int k = 0; k < size; ++k) v[k] = normal(rng);
  return v;
}

// The ball projection must satisfy the optimality conditions of
// min ||y - x||^2 s.t. ||y|| <= R: y feasible and x - y = mu y with mu >= 0.
CheckResult check_projections() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> radius(0.1, 3.0);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int d = 1 + trial % 8;
    const double r = radius(rng);
    const Vector x = random_vector(rng, d, 2.0);
    const Vector y = project_ball(x, r);
    const double nx = x.norm();
    const Vector expected = nx <= r ? x : Vector(x * (r / nx));
    worst = std::max(worst, (y - expected).cwiseAbs().maxCoeff());
    const Vector v = random_vector(rng, d, 1.0);
    const DualVector lam = project_orthant(v);
    for (int k = 0; k < d; ++k) {
      worst = std::max(worst, std::abs(lam[k] - (v[k] > 0.0 ? v[k] : 0.0)));
    }
  }
  return {"projection", worst <= 1e-10, "max error " + format_double(worst)};
}

CheckResult check_unbiasedness() {
  const SyntheticDataset data = generate_dataset(8, 3, 5);
  double worst = 0.0;
  std::mt19937_64 rng(13);
  std::exponential_distribution<double> exp1(1.0);
  std::bernoulli_distribution zero(0.3);
  for (const ProblemSpec& p : {build_logistic_problem(data, 0.1, 0.2),
                               build_hinge_problem(data, 0.3, 0.1)}) {
    for (int trial = 0; trial < 500; ++trial) {
      const Vector x = project_ball(random_vector(rng, p.d, 1.0), p.radius);
      Vector l(p.m);
      for (int k = 0; k < p.m; ++k) l[k] = zero(rng) ? 0.0 : exp1(rng);
      const DualVector lam(l);
      const int agent = trial % p.n;
      const Vector probs = sampling_distribution(lam);
      Vector mean = Vector::Zero(p.d);
      for (int k = 0; k < p.m; ++k) {
        mean += probs[k] * stochastic_grad_x(p, agent, x, lam, k);
      }
      worst = std::max(worst,
                       (mean - grad_x(p, agent, x, lam)).cwiseAbs().maxCoeff());
    }
  }
  return {"unbiasedness", worst <= 1e-12, "max error " + format_double(worst)};
}

CheckResult check_inequalities(long t_max) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  long failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> alphas(1 + trial % 200);
    for (double& a : alphas) a = 1.0 - unit(rng);  // in (0, 1]
    if (!check_product_sum_inequality(alphas, 1.0)) ++failures;
  }
  for (long tau = 1; tau <= 50; ++tau) {
    for (long t = tau - 1; t <= t_max; ++t) {
      if (!check_tau_inequality(tau, t)) ++failures;
    }
  }
  return {"stepsize_inequalities", failures == 0,
          std::to_string(failures) + " failures"};
}

CheckResult check_mixing() {
  long failures = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 10 + static_cast<int>(seed) * 9;
    for (const GraphTopology& g :
         {generate_watts_strogatz(n, 4, 0.1, seed), generate_erdos_renyi(n, 0.3, seed),
          generate_barbell(n - n % 2, 1)}) {
      const ConsensusMatrix w = lazy_metropolis(g);
      const double bound = 71.0 * n * n;
      const double inverse_gap = 1.0 / (1.0 - w.sigma2());
      worst_margin = std::min(worst_margin, bound - inverse_gap);
      if (inverse_gap > bound || stochasticity_error(w.entries()) > 1e-12 ||
          !respects_structure(w, g)) {
        ++failures;
      }
    }
  }
  return {"lazy_metropolis", failures == 0,
          std::to_string(failures) + " failures, min 71n^2 margin " +
              format_double(worst_margin)};
}

std::vector<CheckResult> canonical_run_checks(std::ostream& log) {
  const SyntheticDataset data = generate_dataset(100, 5, 1);
  const ProblemSpec p = build_logistic_problem(data, 0.1, 0.1);
  const ConsensusMatrix w =
      lazy_metropolis(generate_watts_strogatz(100, 20, 0.02, 1));
  log << "verify: computing reference optimum\n";
  const ReferenceSolution ref = reference_optimum(p);
  RunConfig cfg;
  cfg.iterations = 10000;
  cfg.eta = 1.0;
  cfg.monitor_bounds = true;
  log << "verify: canonical run (logistic, WS(100,20,0.02), eta=1, T=1e4)\n";
  const Trace trace = run(p, w, cfg, &ref);
  std::vector<CheckResult> out;
  for (const BoundCheck* c : trace.monitors.checks()) {
    out.push_back({c->name, c->ok() && c->checks > 0,
                   std::to_string(c->checks) + " checks, " +
                       std::to_string(c->violations) + " violations, worst margin " +
                       format_double(c->worst_margin) + " at t=" +
                       std::to_string(c->t_at_worst)});
  }
  // Convergence-bound margin at every sampled T >= 2, recomputed from the trace.
  long negative = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& r : trace.records) {
    if (r.t < 2) continue;
    const double margin = r.bound_margin_thm2 + std::max(1e-4, ref.residual);
    worst = std::min(worst, margin);
    if (!(margin > 0.0)) ++negative;
  }
  out.push_back({"thm2_margin", negative == 0,
                 "min margin " + format_double(worst)});
  return out;
}

}  // namespace

int cmd_verify(VerifyLevel level, std::ostream& log) {
  std::vector<CheckResult> results;
  const auto timed = [&](const Check& check) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r = check();
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    r.detail += " (" + format_double(std::round(secs * 100) / 100) + " s)";
    results.push_back(std::move(r));
  };
  timed(check_projections);
  timed(check_unbiasedness);
  timed([&] {
    return check_inequalities(level == VerifyLevel::kFull ? 10000 : 2000);
  });
  timed(check_mixing);
  if (level == VerifyLevel::kFull) {
    for (auto& r : canonical_run_checks(log)) results.push_back(std::move(r));
  }

  bool all_ok = true;
  log << std::left << std::setw(26) << "check" << std::setw(7) << "status"
      << "detail\n";
  for (const auto& r : results) {
    all_ok = all_ok && r.ok;
    log << std::left << std::setw(26) << r.name << std::setw(7)
        << (r.ok ? "PASS" : "FAIL") << r.detail << '\n';
  }
  return all_ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace drpd::cli
