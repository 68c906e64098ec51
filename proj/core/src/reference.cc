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

#include "drpd/reference.h"

#include <cmath>
#include <limits>
#include <random>

namespace drpd {
namespace {

constexpr int kMaxBisection = 200;

Vector clip(const Vector& x, const Box& box) {
  return x.cwiseMax(box.lower).cwiseMin(box.upper);
}

void require_box(const Box& box, int d) {
  if (box.lower.size() != d || box.upper.size() != d) {
    throw InvalidArgument("box dimension mismatch");
  }
  if ((box.lower.array() > 0.0).any() || (box.upper.array() < 0.0).any()) {
    throw InvalidArgument("box must contain the origin");
  }
}

// Largest s in [lo, hi] with ||clip(s * direction)|| <= radius, assuming the
// norm is nondecreasing in s, feasible at lo and infeasible at hi.
double bisect_scale(const Vector& direction, const Box& box, double radius,
                    double lo, double hi) {
  for (int it = 0; it < kMaxBisection; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (clip(mid * direction, box).norm() <= radius) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

Vector project_box_ball(const Vector& x, const Box& box, double radius) {
  require_box(box, static_cast<int>(x.size()));
  Vector y = clip(x, box);
  if (y.norm() <= radius) return y;
  // y(s) = clip(s x) with s = 1 / (1 + mu); ||y(s)|| grows with s.
  const double s = bisect_scale(x, box, radius, 0.0, 1.0);
  return clip(s * x, box);
}

Vector minimize_linear_box_ball(const Vector& c, const Box& box,
                                double radius) {
  require_box(box, static_cast<int>(c.size()));
  const int d = static_cast<int>(c.size());
  Vector vertex(d);
  for (int k = 0; k < d; ++k) {
    vertex[k] = c[k] > 0.0 ? box.lower[k] : (c[k] < 0.0 ? box.upper[k] : 0.0);
  }
  if (vertex.norm() <= radius) return vertex;
  // y(s) = clip(-s c), s = 1 / mu.
  const Vector direction = -c;
  double hi = 1.0;
  while (clip(hi * direction, box).norm() <= radius) hi *= 2.0;
  const double s = bisect_scale(direction, box, radius, 0.0, hi);
  return clip(s * direction, box);
}

ReferenceSolution reference_optimum(const ProblemSpec& p, long iterations,
                                    std::uint64_t seed, double tolerance) {
  p.validate();
  if (!p.box) {
    throw InvalidArgument(
        "reference_optimum needs a problem whose constraints form a box");
  }
  if (iterations < 1) throw InvalidArgument("reference: iterations >= 1");
  const Box& box = *p.box;
  const double radius = p.radius;

  // Random start inside the feasible set.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector x(p.d);
  for (int k = 0; k < p.d; ++k) x[k] = normal(rng);
  x = project_box_ball(x, box, radius);

  // Step scale = diameter of the feasible set / L keeps the steps in
  // proportion to the set when the box is much smaller than the ball.
  const double diameter =
      std::min(2.0 * radius, (box.upper - box.lower).norm());
  const double scale = diameter / p.lipschitz;

  ReferenceSolution best;
  best.f_star = std::numeric_limits<double>::infinity();
  Vector best_grad;

  // Weighted average of the linear minorants f(x_t) + <g_t, y - x_t>.
  double weight_total = 0.0;
  double weighted_offset = 0.0;
  Vector weighted_grad = Vector::Zero(p.d);

  Evaluation eval = p.cumulative_objective(x);
  for (long t = 0; t < iterations; ++t) {
    if (!std::isfinite(eval.value) || !eval.subgradient.allFinite()) {
      throw NumericalError("reference solver produced non-finite values");
    }
    if (eval.value < best.f_star) {
      best.f_star = eval.value;
      best.x_star = x;
      best_grad = eval.subgradient;
    }
    const double alpha = scale / std::sqrt(static_cast<double>(t) + 1.0);
    weight_total += alpha;
    weighted_offset += alpha * (eval.value - eval.subgradient.dot(x));
    weighted_grad += alpha * eval.subgradient;

    x = project_box_ball(x - alpha * eval.subgradient, box, radius);
    eval = p.cumulative_objective(x);
  }
  if (eval.value < best.f_star) {
    best.f_star = eval.value;
    best.x_star = x;
    best_grad = eval.subgradient;
  }

  // Two certified lower bounds on the optimum: the averaged minorant and
  // the minorant at the best point.
  const Vector y_avg = minimize_linear_box_ball(weighted_grad, box, radius);
  const double lb_avg = (weighted_offset + weighted_grad.dot(y_avg)) /
                        weight_total;
  const Vector y_best = minimize_linear_box_ball(best_grad, box, radius);
  const double lb_best = best.f_star + best_grad.dot(y_best - best.x_star);

  best.residual = std::max(0.0, best.f_star - std::max(lb_avg, lb_best));
  best.converged = best.residual <= tolerance;
  best.iterations = iterations;
  best.method = "projected-subgradient";
  return best;
}

}  // namespace drpd
