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

#ifndef DRPD_REFERENCE_H_
#define DRPD_REFERENCE_H_

#include <cstdint>
#include <optional>
#include <string>

#include "drpd/problem.h"
#include "drpd/types.h"

namespace drpd {

struct ReferenceSolution {
  double f_star = 0.0;
  Vector x_star;
  std::string method = "projected-subgradient";
  // Certified suboptimality bound f(x_star) - f_opt, from the best
  // linear lower model collected along the run.
  double residual = 0.0;
  bool converged = false;
  long iterations = 0;
  // Never consumed by the experiments; kept for completeness.
  std::optional<Vector> dual_estimate;
};

inline constexpr long kDefaultReferenceIterations = 1'000'000;
inline constexpr double kDefaultReferenceTolerance = 1e-4;

// Exact Euclidean projection onto {lower <= y <= upper} ∩ {||y|| <= R}:
// y(mu) = clip(x / (1 + mu)) with mu >= 0 found by bisection so that
// ||y(mu)|| = R whenever the plain box clip leaves the ball.
Vector project_box_ball(const Vector& x, const Box& box, double radius);

// argmin <c, y> over the box ∩ ball.
Vector minimize_linear_box_ball(const Vector& c, const Box& box,
                                double radius);

// Centralized projected subgradient on f = (1/n) sum f_i over the feasible
// set (p.box ∩ R-ball), step (diameter / L)/sqrt(t+1), best iterate
// kept. The seed picks the starting point. `converged` is set when the certified residual
// is within `tolerance`; callers decide what to do otherwise.
ReferenceSolution reference_optimum(
    const ProblemSpec& p, long iterations = kDefaultReferenceIterations,
    std::uint64_t seed = 0, double tolerance = kDefaultReferenceTolerance);

}  // namespace drpd

#endif  // DRPD_REFERENCE_H_
