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

#include "drpd/problem.h"

#include <cmath>
#include <random>
#include <string>

namespace drpd {
namespace {

void require_dimension(const Vector& x, int d, const char* what) {
  if (x.size() != d) {
    throw InvalidArgument(std::string(what) + ": expected dimension " +
                          std::to_string(d) + ", got " +
                          std::to_string(x.size()));
  }
}

Vector unit_gaussian_direction(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(d);
  double norm = 0.0;
  while (norm == 0.0) {
    for (int k = 0; k < d; ++k) v[k] = normal(rng);
    norm = v.norm();
  }
  return v / norm;
}

ProblemSpec regression_skeleton(const SyntheticDataset& data, double l,
                                double u, const char* family) {
  if (!(l > 0.0) || !(u > 0.0)) {
    throw InvalidArgument(std::string(family) +
                          ": box margins l and u must be positive");
  }
  ProblemSpec p;
  p.family = family;
  p.d = data.d();
  p.n = data.n();
  p.m = 2 * p.d;
  p.lipschitz = 1.0;
  p.radius = 1.0;
  p.constraints = box_constraints(p.d, l, u);
  p.box = Box{Vector::Constant(p.d, -l), Vector::Constant(p.d, u)};
  return p;
}

}  // namespace

void ProblemSpec::validate() const {
  if (d < 1 || n < 1 || m < 0) {
    throw InvalidArgument("problem: need d >= 1, n >= 1, m >= 0");
  }
  if (static_cast<int>(objectives.size()) != n) {
    throw InvalidArgument("problem: expected one objective per agent");
  }
  if (static_cast<int>(constraints.size()) != m) {
    throw InvalidArgument("problem: constraint count does not match m");
  }
  if (!(lipschitz > 0.0) || !(radius > 0.0)) {
    throw InvalidArgument("problem: L and R must be positive");
  }
  if (box) {
    if (box->lower.size() != d || box->upper.size() != d) {
      throw InvalidArgument("problem: box dimension mismatch");
    }
    if ((box->lower.array() > 0.0).any() || (box->upper.array() < 0.0).any()) {
      throw InvalidArgument("problem: box must contain the origin");
    }
  }
}

Evaluation ProblemSpec::objective(int agent, const Vector& x) const {
  if (agent < 0 || agent >= n) throw InvalidArgument("agent out of range");
  require_dimension(x, d, "objective");
  return objectives[agent](x);
}

Evaluation ProblemSpec::constraint(int k, const Vector& x) const {
  if (k < 0 || k >= m) throw InvalidArgument("constraint index out of range");
  require_dimension(x, d, "constraint");
  return constraints[k](x);
}

Vector ProblemSpec::constraint_values(const Vector& x) const {
  require_dimension(x, d, "constraint_values");
  Vector g(m);
  for (int k = 0; k < m; ++k) g[k] = constraints[k](x).value;
  return g;
}

Evaluation ProblemSpec::cumulative_objective(const Vector& x) const {
  require_dimension(x, d, "cumulative_objective");
  if (cumulative) return cumulative(x);
  Evaluation total{0.0, Vector::Zero(d)};
  for (int i = 0; i < n; ++i) {
    Evaluation e = objectives[i](x);
    total.value += e.value;
    total.subgradient += e.subgradient;
  }
  total.value /= n;
  total.subgradient /= n;
  return total;
}

SyntheticDataset generate_dataset(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw InvalidArgument("dataset: need n, d >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  SyntheticDataset data;
  data.ground_truth.resize(d);
  for (int k = 0; k < d; ++k) data.ground_truth[k] = normal(rng);
  data.features.resize(n, d);
  data.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    Vector a = unit_gaussian_direction(rng, d);
    data.features.row(i) = a.transpose();
    const double p_plus = 1.0 / (1.0 + std::exp(data.ground_truth.dot(a)));
    data.labels[i] = uniform(rng) < p_plus ? 1.0 : -1.0;
  }
  return data;
}

std::vector<Oracle> box_constraints(int d, double l, double u) {
  std::vector<Oracle> out;
  out.reserve(2 * d);
  for (int k = 0; k < d; ++k) {
    out.emplace_back([k, l, d](const Vector& x) {
      Evaluation e{-l - x[k], Vector::Zero(d)};
      e.subgradient[k] = -1.0;
      return e;
    });
  }
  for (int k = 0; k < d; ++k) {
    out.emplace_back([k, u, d](const Vector& x) {
      Evaluation e{x[k] - u, Vector::Zero(d)};
      e.subgradient[k] = 1.0;
      return e;
    });
  }
  return out;
}

double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double logistic_sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

ProblemSpec build_logistic_problem(const SyntheticDataset& data, double l,
                                   double u) {
  ProblemSpec p = regression_skeleton(data, l, u, "logistic");
  for (int i = 0; i < p.n; ++i) {
    Vector a = data.features.row(i).transpose();
    const double b = data.labels[i];
    p.objectives.emplace_back([a, b](const Vector& x) {
      const double z = b * a.dot(x);
      return Evaluation{softplus(z), (b * logistic_sigmoid(z)) * a};
    });
  }
  // Vectorized (1/n) sum_i f_i for metrics and the reference solver.
  Matrix signed_features = data.labels.asDiagonal() * data.features;
  p.cumulative = [signed_features](const Vector& x) {
    const Vector z = signed_features * x;
    Vector weights(z.size());
    double value = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      value += softplus(z[i]);
      weights[i] = logistic_sigmoid(z[i]);
    }
    const double inv_n = 1.0 / static_cast<double>(z.size());
    return Evaluation{value * inv_n,
                      inv_n * (signed_features.transpose() * weights)};
  };
  return p;
}

ProblemSpec build_hinge_problem(const SyntheticDataset& data, double l,
                                double u) {
  ProblemSpec p = regression_skeleton(data, l, u, "hinge");
  for (int i = 0; i < p.n; ++i) {
    Vector a = data.features.row(i).transpose();
    const double b = data.labels[i];
    p.objectives.emplace_back([a, b](const Vector& x) {
      const double margin = 1.0 - b * a.dot(x);
      if (margin > 0.0) return Evaluation{margin, -b * a};
      return Evaluation{0.0, Vector::Zero(a.size())};
    });
  }
  Matrix signed_features = data.labels.asDiagonal() * data.features;
  p.cumulative = [signed_features](const Vector& x) {
    const Vector margins = 1.0 - (signed_features * x).array();
    Vector active = (margins.array() > 0.0).cast<double>();
    const double inv_n = 1.0 / static_cast<double>(margins.size());
    return Evaluation{margins.cwiseMax(0.0).sum() * inv_n,
                      -inv_n * (signed_features.transpose() * active)};
  };
  return p;
}

FeasibilityReport feasibility_report(const ProblemSpec& p, const Vector& x) {
  require_dimension(x, p.d, "feasibility_report");
  FeasibilityReport report;
  report.violations = p.constraint_values(x).cwiseMax(0.0);
  report.norm_excess = std::max(0.0, x.norm() - p.radius);
  return report;
}

LipschitzReport spot_check_lipschitz(const ProblemSpec& p, int points,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  LipschitzReport report;
  const double limit = p.lipschitz + 1e-12;
  auto check = [&](const Evaluation& e) {
    const double norm = e.subgradient.norm();
    report.worst_norm = std::max(report.worst_norm, norm);
    if (norm > limit) ++report.violations;
  };
  for (int s = 0; s < points; ++s) {
    // Uniform in the ball: direction times R u^{1/d}.
    Vector x = unit_gaussian_direction(rng, p.d) * p.radius *
               std::pow(uniform(rng), 1.0 / p.d);
    for (int i = 0; i < p.n; ++i) check(p.objectives[i](x));
    for (int k = 0; k < p.m; ++k) check(p.constraints[k](x));
    ++report.points_checked;
  }
  return report;
}

}  // namespace drpd
