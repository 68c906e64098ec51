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

#include "drpd/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace drpd {
namespace {

double log_horizon_term(int n, long T, double sigma2) {
  if (!(sigma2 < 1.0)) {
    throw InvalidArgument("spectral gap is zero (disconnected graph?)");
  }
  const double t = static_cast<double>(T);
  const double log_term = std::log(t * std::sqrt(static_cast<double>(n) * t));
  return std::pow(log_term / (1.0 - sigma2), 1.5);
}

double dual_blowup(const ProblemSpec& p, int n, double eta) {
  if (!(eta > 0.0)) throw InvalidArgument("bound needs eta > 0");
  const double L = p.lipschitz;
  const double R = p.radius;
  return 1.0 + n * std::pow(static_cast<double>(p.m), 1.5) * L * R / eta;
}

}  // namespace

AverageSnapshot snapshot_averages(const ProblemSpec& p,
                                  std::span<const AgentState> states) {
  AverageSnapshot snap;
  snap.objective.reserve(states.size());
  snap.constraints.reserve(states.size());
  for (const auto& s : states) {
    const Vector avg = s.average();
    snap.objective.push_back(p.cumulative_objective(avg).value);
    snap.constraints.push_back(p.constraint_values(avg));
  }
  return snap;
}

EpsilonResult epsilon_G(const AverageSnapshot& now,
                        const AverageSnapshot& initial, double f_star) {
  if (now.objective.size() != initial.objective.size() ||
      now.objective.empty()) {
    throw InvalidArgument("epsilon_G: agent count mismatch");
  }
  EpsilonResult result;
  for (std::size_t i = 0; i < now.objective.size(); ++i) {
    const double gap = now.objective[i] - f_star;
    const double normalizer = initial.objective[i] - f_star;
    double value;
    if (std::abs(normalizer) < kDegenerateNormalizer) {
      value = std::abs(gap);
      result.absolute = true;
    } else {
      value = std::abs(gap / normalizer);
    }
    result.value = std::max(result.value, value);
  }
  return result;
}

double delta_G(const AverageSnapshot& now, const AverageSnapshot& initial) {
  if (now.constraints.size() != initial.constraints.size() ||
      now.constraints.empty()) {
    throw InvalidArgument("delta_G: agent count mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < now.constraints.size(); ++i) {
    const double denominator = initial.constraints[i].norm();
    if (denominator == 0.0) {
      throw InvalidArgument("delta_G: ||g(xhat_i(0))|| is zero");
    }
    worst = std::max(worst, now.constraints[i].norm() / denominator);
  }
  return worst;
}

double violation_functional(const AverageSnapshot& now) {
  if (now.constraints.empty()) {
    throw InvalidArgument("violation_functional: no agents");
  }
  Vector mean = Vector::Zero(now.constraints.front().size());
  for (const auto& g : now.constraints) mean += g;
  mean /= static_cast<double>(now.constraints.size());
  return mean.cwiseMax(0.0).squaredNorm();
}

EpsilonResult epsilon_G(const ProblemSpec& p, double f_star,
                        std::span<const AgentState> states,
                        std::span<const AgentState> initial) {
  return epsilon_G(snapshot_averages(p, states), snapshot_averages(p, initial),
                   f_star);
}

EpsilonResult epsilon_G(const ProblemSpec& p, const ReferenceSolution& ref,
                        std::span<const AgentState> states,
                        std::span<const AgentState> initial) {
  return epsilon_G(p, ref.f_star, states, initial);
}

double delta_G(const ProblemSpec& p, std::span<const AgentState> states,
               std::span<const AgentState> initial) {
  return delta_G(snapshot_averages(p, states), snapshot_averages(p, initial));
}

double violation_functional(const ProblemSpec& p,
                            std::span<const AgentState> states) {
  return violation_functional(snapshot_averages(p, states));
}

double consensus_diameter(std::span<const AgentState> states) {
  double worst = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      worst = std::max(worst, (states[i].x - states[j].x).norm());
    }
  }
  return worst;
}

double lambda_sq_sum(std::span<const AgentState> states) {
  double total = 0.0;
  for (const auto& s : states) total += s.lam.squared_norm();
  return total;
}

double max_lambda_norm(std::span<const AgentState> states) {
  double worst = 0.0;
  for (const auto& s : states) worst = std::max(worst, s.lam.norm());
  return worst;
}

double thm2_constant(const ProblemSpec& p, double sigma2, double eta, long T,
                     int n) {
  if (T < 2) throw InvalidArgument("thm2_constant: T must be >= 2");
  const double L = p.lipschitz;
  const double R = p.radius;
  const double blowup = dual_blowup(p, n, eta);
  return 1.0 + 2.5 * p.m * L * L * R * R +
         20.0 * L * L * blowup * blowup * log_horizon_term(n, T, sigma2);
}

double thm2_constant(const ProblemSpec& p, const ConsensusMatrix& w,
                     double eta, long T, int n) {
  return thm2_constant(p, w.sigma2(), eta, T, n);
}

double thm2_bound(const ProblemSpec& p, double sigma2, double eta, long T,
                  int n) {
  const double t = static_cast<double>(T);
  return p.radius * thm2_constant(p, sigma2, eta, T, n) * std::log(t) /
         (std::sqrt(t) - 1.0);
}

double thm4_high_probability_bound(const ProblemSpec& p, double sigma2,
                                   double eta, long T, int n) {
  const double t = static_cast<double>(T);
  const double L = p.lipschitz;
  const double R = p.radius;
  const double m = p.m;
  const double extra = 4.0 * std::sqrt(10.0) * n * m * m * L * L * R * R * R /
                       eta;
  return std::log(t) / (std::sqrt(t) - 1.0) *
         (R * thm2_constant(p, sigma2, eta, T, n) + extra);
}

double lambda_sq_sum_bound(const ProblemSpec& p, int n, double eta) {
  if (!(eta > 0.0)) throw InvalidArgument("lambda bound needs eta > 0");
  const double L = p.lipschitz;
  const double R = p.radius;
  return n * p.m * L * L * R * R / (eta * eta);
}

double grad_x_bound(const ProblemSpec& p, int n, double eta) {
  return p.lipschitz * dual_blowup(p, n, eta);
}

double grad_lambda_sq_bound(const ProblemSpec& p, double eta,
                            double lambda_sq_norm) {
  const double L = p.lipschitz;
  const double R = p.radius;
  return 2.0 * p.m * L * L * R * R + 2.0 * eta * eta * lambda_sq_norm;
}

double consensus_distance_bound(const ProblemSpec& p, int n, double sigma2,
                                double eta, long T, double alpha_t) {
  if (T < 1) throw InvalidArgument("consensus bound needs T >= 1");
  return 5.0 * p.lipschitz * dual_blowup(p, n, eta) *
         log_horizon_term(n, T, sigma2) * alpha_t;
}

bool check_product_sum_inequality(std::span<const double> alphas,
                                  double eta) {
  // S_t = (1 - theta_t) S_{t-1} + theta_t equals the prefix sum-product.
  double running = 0.0;
  for (std::size_t t = 0; t < alphas.size(); ++t) {
    const double theta = alphas[t] * eta;
    if (!(theta >= 0.0) || theta > 1.0) {
      throw InvalidArgument("product-sum inequality needs 0 <= alpha*eta <= 1");
    }
    running = (1.0 - theta) * running + theta;
    if (running > 1.0 + 1e-12) return false;
  }
  return true;
}

bool check_tau_inequality(long tau, long t) {
  if (tau < 1 || t < tau - 1) {
    throw InvalidArgument("tau inequality needs tau >= 1 and t >= tau - 1");
  }
  const double numerator = static_cast<double>(t) + 1.0;
  double sum = 0.0;
  for (long r = t - tau + 1; r <= t - 1; ++r) {
    sum += std::sqrt(numerator / (static_cast<double>(r) + 1.0));
  }
  const double limit = std::pow(static_cast<double>(tau), 1.5);
  return sum <= limit * (1.0 + 1e-12);
}

double record_column(const IterationRecord& r, const std::string& column) {
  if (column == "t") return static_cast<double>(r.t);
  if (column == "eps_G") return r.eps;
  if (column == "delta_G") return r.delta;
  if (column == "max_lambda_norm") return r.max_lambda_norm;
  if (column == "lambda_sq_sum") return r.lambda_sq_sum;
  if (column == "consensus_diameter") return r.consensus_diameter;
  if (column == "max_gap") return r.max_gap;
  if (column == "thm2_bound") return r.thm2_bound;
  if (column == "bound_margin_thm2") return r.bound_margin_thm2;
  if (column == "violation_sq") return r.violation_sq;
  throw InvalidArgument("unknown trace column '" + column + "'");
}

RateFit rate_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 10) {
    throw InvalidArgument("rate_fit needs at least 10 points, got " +
                          std::to_string(points.size()));
  }
  const double count = static_cast<double>(points.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& [t, v] : points) {
    if (!(t > 0.0) || !(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("rate_fit needs positive, finite data");
    }
    mean_x += std::log(t);
    mean_y += std::log(v);
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [t, v] : points) {
    const double dx = std::log(t) - mean_x;
    const double dy = std::log(v) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw InvalidArgument("rate_fit needs distinct t values");
  RateFit fit;
  fit.exponent = sxy / sxx;
  fit.points = static_cast<int>(points.size());
  const double residual = syy - fit.exponent * sxy;
  fit.r2 = syy > 0.0 ? 1.0 - residual / syy : 1.0;
  return fit;
}

RateFit rate_fit(const Trace& trace, const std::string& column, long t_lo,
                 long t_hi) {
  std::vector<std::pair<double, double>> points;
  for (const auto& r : trace.records) {
    if (r.t < t_lo || r.t > t_hi) continue;
    points.emplace_back(static_cast<double>(r.t), record_column(r, column));
  }
  return rate_fit(points);
}

}  // namespace drpd
