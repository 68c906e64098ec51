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

#ifndef DRPD_PROBLEM_H_
#define DRPD_PROBLEM_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "drpd/types.h"

namespace drpd {

// Value and one subgradient of a convex function at a point.
struct Evaluation {
  double value = 0.0;
  Vector subgradient;
};

using Oracle = std::function<Evaluation(const Vector&)>;

// Axis-aligned box lower <= x <= upper. It must contain the origin.
struct Box {
  Vector lower;
  Vector upper;
};

// Separable problem  min (1/n) sum_i f_i(x)  s.t.  g_k(x) <= 0, k < m,
// solved over the ball ||x|| <= radius.
//
// objectives[i] is agent i's private f_i; constraints are shared by every
// agent. When `box` is set the constraints describe exactly that box, which
// lets the reference solver project onto the feasible set. `cumulative` is
// an optional fast path for f = (1/n) sum_i f_i.
struct ProblemSpec {
  std::string family = "custom";
  int d = 0;
  int m = 0;
  int n = 0;
  std::vector<Oracle> objectives;
  std::vector<Oracle> constraints;
  double lipschitz = 1.0;
  double radius = 1.0;
  std::optional<Box> box;
  Oracle cumulative;

  // Throws InvalidArgument when sizes disagree or L, R are not positive.
  void validate() const;

  Evaluation objective(int agent, const Vector& x) const;
  Evaluation constraint(int k, const Vector& x) const;
  // g(x) as an m-vector.
  Vector constraint_values(const Vector& x) const;
  // f(x) = (1/n) sum_i f_i(x), with its subgradient.
  Evaluation cumulative_objective(const Vector& x) const;
};

// Synthetic classification data: unit-norm features, +-1 labels drawn from
// the logistic model around ground_truth.
struct SyntheticDataset {
  Matrix features;  // n x d, row i is a_i
  Vector labels;    // entries in {-1, +1}
  Vector ground_truth;

  int n() const { return static_cast<int>(features.rows()); }
  int d() const { return static_cast<int>(features.cols()); }
};

// a_i uniform on the unit sphere, w ~ N(0, I_d),
// P(b_i = +1) = 1 / (1 + exp(<w, a_i>)). Deterministic per seed.
SyntheticDataset generate_dataset(int n, int d, std::uint64_t seed);

// Box constraints g_k(x) = -l - x_k and g_{k+d}(x) = x_k - u, k < d.
// Returned in that order (m = 2d). Requires l, u > 0.
std::vector<Oracle> box_constraints(int d, double l, double u);

// f_i(x) = log(1 + exp(b_i <a_i, x>)), box constraints with margins l, u,
// R = 1 and L = 1.
ProblemSpec build_logistic_problem(const SyntheticDataset& data, double l,
                                   double u);

// f_i(x) = max(0, 1 - b_i <a_i, x>), box constraints with margins l, u,
// R = 1 and L = 1. At the kink the zero subgradient is returned.
ProblemSpec build_hinge_problem(const SyntheticDataset& data, double l,
                                double u);

// Numerically stable log(1 + exp(z)).
double softplus(double z);
// 1 / (1 + exp(-z)) without overflow.
double logistic_sigmoid(double z);

struct FeasibilityReport {
  Vector violations;  // [g_k(x)]_+
  double norm_excess = 0.0;  // [||x|| - R]_+
};

FeasibilityReport feasibility_report(const ProblemSpec& p, const Vector& x);

struct LipschitzReport {
  int points_checked = 0;
  int violations = 0;
  double worst_norm = 0.0;
};

// Samples `points` uniform points of the R-ball and checks every objective
// and constraint subgradient norm against L (+1e-12).
LipschitzReport spot_check_lipschitz(const ProblemSpec& p, int points,
                                     std::uint64_t seed);

}  // namespace drpd

#endif  // DRPD_PROBLEM_H_
