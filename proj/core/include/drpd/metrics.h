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

#ifndef DRPD_METRICS_H_
#define DRPD_METRICS_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "drpd/consensus.h"
#include "drpd/problem.h"
#include "drpd/reference.h"
#include "drpd/state.h"

namespace drpd {

// Below this |f(xhat_i(0)) - f*| the relative error is replaced by the
// absolute gap.
inline constexpr double kDegenerateNormalizer = 1e-14;

struct EpsilonResult {
  double value = 0.0;
  bool absolute = false;
};

// f and g evaluated at every agent's running average.
struct AverageSnapshot {
  std::vector<double> objective;
  std::vector<Vector> constraints;
};

// Throws InvalidArgument when some agent has no average yet.
AverageSnapshot snapshot_averages(const ProblemSpec& p,
                                  std::span<const AgentState> states);

EpsilonResult epsilon_G(const AverageSnapshot& now,
                        const AverageSnapshot& initial, double f_star);
double delta_G(const AverageSnapshot& now, const AverageSnapshot& initial);
double violation_functional(const AverageSnapshot& now);

// max_i |(f(xhat_i) - f*) / (f(xhat_i(0)) - f*)|.
EpsilonResult epsilon_G(const ProblemSpec& p, double f_star,
                        std::span<const AgentState> states,
                        std::span<const AgentState> initial);
EpsilonResult epsilon_G(const ProblemSpec& p, const ReferenceSolution& ref,
                        std::span<const AgentState> states,
                        std::span<const AgentState> initial);

// max_i ||g(xhat_i)|| / ||g(xhat_i(0))||, the full constraint vector norm.
double delta_G(const ProblemSpec& p, std::span<const AgentState> states,
               std::span<const AgentState> initial);

// ||[(1/n) sum_i g(xhat_i)]_+||^2.
double violation_functional(const ProblemSpec& p,
                            std::span<const AgentState> states);

// max_{i,j} ||x_i - x_j|| over the current iterates.
double consensus_diameter(std::span<const AgentState> states);
double lambda_sq_sum(std::span<const AgentState> states);
double max_lambda_norm(std::span<const AgentState> states);

// C = 1 + (5/2) m L^2 R^2
//       + 20 L^2 (1 + n m^{3/2} L R / eta)^2 (log(T sqrt(nT)) / (1 - sigma2))^{3/2}
double thm2_constant(const ProblemSpec& p, double sigma2, double eta, long T,
                     int n);
double thm2_constant(const ProblemSpec& p, const ConsensusMatrix& w,
                     double eta, long T, int n);

// R C log(T) / (sqrt(T) - 1), T >= 2.
double thm2_bound(const ProblemSpec& p, double sigma2, double eta, long T,
                  int n);

// log(T) / (sqrt(T) - 1) (R C + 4 sqrt(10) n m^2 L^2 R^3 / eta), T >= 2.
double thm4_high_probability_bound(const ProblemSpec& p, double sigma2,
                                   double eta, long T, int n);

// n m L^2 R^2 / eta^2, the bound on sum_i ||lam_i(t)||^2.
double lambda_sq_sum_bound(const ProblemSpec& p, int n, double eta);

// L (1 + n m^{3/2} L R / eta).
double grad_x_bound(const ProblemSpec& p, int n, double eta);

// 2 m L^2 R^2 + 2 eta^2 ||lam||^2.
double grad_lambda_sq_bound(const ProblemSpec& p, double eta,
                            double lambda_sq_norm);

// 5 L (1 + n m^{3/2} L R / eta) (log(T sqrt(nT)) / (1 - sigma2))^{3/2} alpha_t.
double consensus_distance_bound(const ProblemSpec& p, int n, double sigma2,
                                double eta, long T, double alpha_t);

// Checks sum_{l<=t} a_l eta prod_{l<k<=t} (1 - a_k eta) <= 1 + 1e-12 for
// every prefix t. Throws InvalidArgument when some a_t eta > 1 or < 0.
bool check_product_sum_inequality(std::span<const double> alphas, double eta);

// Checks sum_{r=t-tau+1}^{t-1} sqrt((t+1)/(r+1)) <= tau^{3/2}.
// Throws InvalidArgument unless tau >= 1 and t >= tau - 1.
bool check_tau_inequality(long tau, long t);

struct RateFit {
  double exponent = 0.0;
  double r2 = 0.0;
  int points = 0;
};

// Least-squares slope of log(metric) against log(t) over records with
// t in [t_lo, t_hi]. Needs at least 10 records, all positive.
RateFit rate_fit(const Trace& trace, const std::string& column, long t_lo,
                 long t_hi);
RateFit rate_fit(std::span<const std::pair<double, double>> points);

// Value of a named trace column: t, eps_G, delta_G, max_lambda_norm,
// lambda_sq_sum, consensus_diameter, max_gap, thm2_bound,
// bound_margin_thm2, violation_sq. Throws InvalidArgument otherwise.
double record_column(const IterationRecord& r, const std::string& column);

}  // namespace drpd

#endif  // DRPD_METRICS_H_
