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

#ifndef DRPD_LAGRANGIAN_H_
#define DRPD_LAGRANGIAN_H_

#include <vector>

#include "drpd/problem.h"
#include "drpd/types.h"

namespace drpd {

// Lagrange multipliers, always in the nonnegative orthant.
class DualVector {
 public:
  DualVector() = default;
  // Throws InvalidArgument when any component is negative or non-finite.
  explicit DualVector(Vector values);
  static DualVector zeros(int m);

  const Vector& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int k) const { return values_[k]; }
  double l1_norm() const { return values_.sum(); }
  double norm() const { return values_.norm(); }
  double squared_norm() const { return values_.squaredNorm(); }
  bool is_zero() const { return (values_.array() == 0.0).all(); }

 private:
  Vector values_;
};

struct RegularizationConfig {
  double eta = 1.0;

  // Throws InvalidArgument unless eta > 0.
  void validate() const;
  // Largest eta * alpha over the schedule must stay <= 1/2.
  bool admits(const std::vector<double>& alphas) const;
};

// f_i(x) + <lam, g(x)> - (eta/2) ||lam||^2.
double lagrangian_value(const ProblemSpec& p, int agent, const Vector& x,
                        const DualVector& lam, const RegularizationConfig& reg);

// grad f_i(x) + sum_k lam_k grad g_k(x).
Vector grad_x(const ProblemSpec& p, int agent, const Vector& x,
              const DualVector& lam);

// g(x) - eta lam.
Vector grad_lambda(const ProblemSpec& p, const Vector& x, const DualVector& lam,
                   const RegularizationConfig& reg);

// lam / ||lam||_1, or uniform when lam is exactly zero.
Vector sampling_distribution(const DualVector& lam);

// grad f_i(x) + ||lam||_1 grad g_k(x). Unbiased for grad_x under
// k ~ sampling_distribution(lam).
Vector stochastic_grad_x(const ProblemSpec& p, int agent, const Vector& x,
                         const DualVector& lam, int k);

// Inverse-CDF draw from a probability vector given u in [0, 1). Never
// returns an index of zero probability.
int sample_index(const Vector& probabilities, double u);

// One agent's oracle answers at a point, shared by the primal and dual
// directions so each oracle is queried once per step.
struct LocalEvaluation {
  Evaluation objective;
  std::vector<Evaluation> constraints;

  Vector constraint_values() const;
};

LocalEvaluation evaluate_local(const ProblemSpec& p, int agent,
                               const Vector& x);

Vector grad_x(const LocalEvaluation& local, const DualVector& lam);
Vector stochastic_grad_x(const LocalEvaluation& local, const DualVector& lam,
                         int k);
// g - eta lam; eta may be 0 here (unregularized baseline).
Vector grad_lambda(const LocalEvaluation& local, const DualVector& lam,
                   double eta);

}  // namespace drpd

#endif  // DRPD_LAGRANGIAN_H_
