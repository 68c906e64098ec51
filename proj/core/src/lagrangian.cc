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

#include "drpd/lagrangian.h"

#include <cmath>
#include <string>

namespace drpd {

DualVector::DualVector(Vector values) : values_(std::move(values)) {
  for (Eigen::Index k = 0; k < values_.size(); ++k) {
    if (!(values_[k] >= 0.0) || !std::isfinite(values_[k])) {
      throw InvalidArgument("dual vector component " + std::to_string(k) +
                            " is negative or non-finite");
    }
  }
}

DualVector DualVector::zeros(int m) { return DualVector(Vector::Zero(m)); }

void RegularizationConfig::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InvalidArgument("regularization eta must be positive");
  }
}

bool RegularizationConfig::admits(const std::vector<double>& alphas) const {
  for (double a : alphas) {
    if (eta * a > 0.5) return false;
  }
  return true;
}

Vector LocalEvaluation::constraint_values() const {
  Vector g(static_cast<Eigen::Index>(constraints.size()));
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    g[static_cast<Eigen::Index>(k)] = constraints[k].value;
  }
  return g;
}

LocalEvaluation evaluate_local(const ProblemSpec& p, int agent,
                               const Vector& x) {
  LocalEvaluation local;
  local.objective = p.objective(agent, x);
  local.constraints.reserve(p.m);
  for (int k = 0; k < p.m; ++k) local.constraints.push_back(p.constraints[k](x));
  return local;
}

Vector grad_x(const LocalEvaluation& local, const DualVector& lam) {
  if (lam.size() != static_cast<int>(local.constraints.size())) {
    throw InvalidArgument("grad_x: dual dimension mismatch");
  }
  Vector g = local.objective.subgradient;
  for (int k = 0; k < lam.size(); ++k) {
    g += lam[k] * local.constraints[k].subgradient;
  }
  return g;
}

Vector stochastic_grad_x(const LocalEvaluation& local, const DualVector& lam,
                         int k) {
  if (k < 0 || k >= static_cast<int>(local.constraints.size())) {
    throw InvalidArgument("stochastic_grad_x: constraint index out of range");
  }
  if (lam.size() != static_cast<int>(local.constraints.size())) {
    throw InvalidArgument("stochastic_grad_x: dual dimension mismatch");
  }
  Vector g = local.objective.subgradient;
  g += lam.l1_norm() * local.constraints[k].subgradient;
  return g;
}

Vector grad_lambda(const LocalEvaluation& local, const DualVector& lam,
                   double eta) {
  if (lam.size() != static_cast<int>(local.constraints.size())) {
    throw InvalidArgument("grad_lambda: dual dimension mismatch");
  }
  return local.constraint_values() - eta * lam.values();
}

double lagrangian_value(const ProblemSpec& p, int agent, const Vector& x,
                        const DualVector& lam,
                        const RegularizationConfig& reg) {
  if (lam.size() != p.m) throw InvalidArgument("lagrangian: dual size != m");
  const double f = p.objective(agent, x).value;
  return f + lam.values().dot(p.constraint_values(x)) -
         0.5 * reg.eta * lam.squared_norm();
}

Vector grad_x(const ProblemSpec& p, int agent, const Vector& x,
              const DualVector& lam) {
  if (lam.size() != p.m) throw InvalidArgument("grad_x: dual size != m");
  return grad_x(evaluate_local(p, agent, x), lam);
}

Vector grad_lambda(const ProblemSpec& p, const Vector& x, const DualVector& lam,
                   const RegularizationConfig& reg) {
  if (lam.size() != p.m) throw InvalidArgument("grad_lambda: dual size != m");
  return p.constraint_values(x) - reg.eta * lam.values();
}

Vector sampling_distribution(const DualVector& lam) {
  const int m = lam.size();
  if (m == 0) return Vector();
  const double total = lam.l1_norm();
  if (total == 0.0) return Vector::Constant(m, 1.0 / m);
  return lam.values() / total;
}

Vector stochastic_grad_x(const ProblemSpec& p, int agent, const Vector& x,
                         const DualVector& lam, int k) {
  if (k < 0 || k >= p.m) {
    throw InvalidArgument("stochastic_grad_x: constraint index out of range");
  }
  if (lam.size() != p.m) {
    throw InvalidArgument("stochastic_grad_x: dual size != m");
  }
  Vector g = p.objective(agent, x).subgradient;
  g += lam.l1_norm() * p.constraint(k, x).subgradient;
  return g;
}

int sample_index(const Vector& probabilities, double u) {
  const int m = static_cast<int>(probabilities.size());
  if (m == 0) throw InvalidArgument("sample_index: empty distribution");
  if (!(u >= 0.0 && u < 1.0)) throw InvalidArgument("sample_index: u not in [0, 1)");
  double cumulative = 0.0;
  int last_positive = -1;
  for (int k = 0; k < m; ++k) {
    if (probabilities[k] <= 0.0) continue;
    last_positive = k;
    cumulative += probabilities[k];
    if (u < cumulative) return k;
  }
  // Rounding left the total slightly below u.
  return last_positive;
}

}  // namespace drpd
