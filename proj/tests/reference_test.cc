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

#include <gtest/gtest.h>

#include <random>

#include "oracles.h"

namespace drpd {
namespace {

oracle::Vec ToStd(const Vector& v) { return oracle::Vec(v.data(), v.data() + v.size()); }

ProblemSpec SingleObjective(int d, Oracle f, double lipschitz, double l, double u) {
  ProblemSpec p;
  p.family = "test";
  p.d = d;
  p.n = 1;
  p.objectives = {std::move(f)};
  p.constraints = box_constraints(d, l, u);
  p.m = 2 * d;
  p.lipschitz = lipschitz;
  p.radius = 1.0;
  p.box = Box{Vector::Constant(d, -l), Vector::Constant(d, u)};
  return p;
}

TEST(ProjectBoxBallTest, MatchesDykstraOracle) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 1.5);
  std::uniform_real_distribution<double> margin(0.05, 1.2);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 1 + trial % 6;
    Vector x(d), lo(d), hi(d);
    for (int k = 0; k < d; ++k) {
      x[k] = normal(rng);
      lo[k] = -margin(rng);
      hi[k] = margin(rng);
    }
    const Vector y = project_box_ball(x, Box{lo, hi}, 1.0);
    const oracle::Vec z = oracle::dykstra_box_ball(ToStd(x), ToStd(lo), ToStd(hi), 1.0);
    for (int k = 0; k < d; ++k) EXPECT_NEAR(y[k], z[k], 1e-8);
  }
}

TEST(MinimizeLinearTest, BoxInsideBall) {
  Vector c(3);
  c << 1.0, -2.0, 0.5;
  const Box box{Vector::Constant(3, -0.1), Vector::Constant(3, 0.1)};
  const Vector y = minimize_linear_box_ball(c, box, 1.0);
  EXPECT_NEAR(y[0], -0.1, 1e-12);
  EXPECT_NEAR(y[1], 0.1, 1e-12);
  EXPECT_NEAR(y[2], -0.1, 1e-12);
}

TEST(ReferenceOptimumTest, LinearObjectiveOverBox) {
  Vector c(4);
  c << 0.3, -0.5, 0.2, -0.1;
  const ProblemSpec p = SingleObjective(
      4, [c](const Vector& x) { return Evaluation{c.dot(x), c}; }, c.norm(), 0.1, 0.1);
  const ReferenceSolution ref = reference_optimum(p, 20000, 1);
  EXPECT_NEAR(ref.f_star, -0.1 * c.lpNorm<1>(), 1e-4);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(ref.x_star[k], c[k] > 0 ? -0.1 : 0.1, 1e-3);
  EXPECT_TRUE(ref.converged);
  EXPECT_EQ(ref.method, "projected-subgradient");
}

TEST(ReferenceOptimumTest, SquaredNormWithFeasibleOrigin) {
  const ProblemSpec p = SingleObjective(
      3, [](const Vector& x) { return Evaluation{x.squaredNorm(), 2.0 * x}; }, 2.0,
      0.3, 0.3);
  const ReferenceSolution ref = reference_optimum(p, 20000, 4);
  EXPECT_NEAR(ref.f_star, 0.0, 1e-4);
  EXPECT_GE(ref.f_star, 0.0);
}

TEST(ReferenceOptimumTest, SolutionIsFeasible) {
  const SyntheticDataset data = generate_dataset(30, 4, 2);
  const ProblemSpec p = build_logistic_problem(data, 0.1, 0.2);
  const ReferenceSolution ref = reference_optimum(p, 50000, 2);
  EXPECT_LE(p.constraint_values(ref.x_star).maxCoeff(), 1e-8);
  EXPECT_LE(ref.x_star.norm(), 1.0 + 1e-8);
  EXPECT_GE(ref.residual, 0.0);
}

TEST(ReferenceOptimumTest, MonotoneInIterations) {
  const SyntheticDataset data = generate_dataset(20, 3, 5);
  const ProblemSpec p = build_hinge_problem(data, 0.3, 0.3);
  double previous = std::numeric_limits<double>::infinity();
  for (long iterations : {10L, 100L, 1000L, 10000L}) {
    const ReferenceSolution ref = reference_optimum(p, iterations, 9);
    EXPECT_LE(ref.f_star, previous);
    previous = ref.f_star;
  }
}

// Grid search at resolution 1e-3 on the d = 2 logistic instance.
TEST(ReferenceOptimumTest, AgreesWithGridSearch) {
  const SyntheticDataset data = generate_dataset(50, 2, 1);
  const ProblemSpec p = build_logistic_problem(data, 0.1, 0.1);
  const ReferenceSolution ref = reference_optimum(p, 1000000, 1);
  const auto f = [&](const oracle::Vec& x) {
    return p.cumulative_objective(Eigen::Map<const Vector>(x.data(), 2)).value;
  };
  const auto [grid_min, grid_arg] =
      oracle::grid_minimum(f, {-0.1, -0.1}, {0.1, 0.1}, 1.0, 1e-3);
  EXPECT_NEAR(ref.f_star, grid_min, 1e-4);
  EXPECT_LE(ref.f_star, grid_min + 1e-12);  // the grid only samples the set
}

TEST(ReferenceOptimumTest, RequiresBox) {
  const SyntheticDataset data = generate_dataset(5, 2, 1);
  ProblemSpec p = build_logistic_problem(data, 0.1, 0.1);
  p.box.reset();
  EXPECT_THROW(reference_optimum(p, 10, 1), InvalidArgument);
}

}  // namespace
}  // namespace drpd
