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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.h"

namespace drpd {
namespace {

Vector RandomInBall(std::mt19937_64& rng, int d, double r) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  Vector v(d);
  for (int k = 0; k < d; ++k) v[k] = normal(rng);
  return v * (r * std::pow(unit(rng), 1.0 / d) / v.norm());
}

oracle::Vec ToStd(const Vector& v) { return oracle::Vec(v.data(), v.data() + v.size()); }
Vector FromStd(const oracle::Vec& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

TEST(DatasetTest, FeaturesOnUnitSphere) {
  const SyntheticDataset data = generate_dataset(200, 7, 3);
  EXPECT_EQ(data.n(), 200);
  EXPECT_EQ(data.d(), 7);
  for (int i = 0; i < data.n(); ++i) {
    EXPECT_NEAR(data.features.row(i).norm(), 1.0, 1e-12);
    EXPECT_TRUE(data.labels[i] == 1.0 || data.labels[i] == -1.0);
  }
}

TEST(DatasetTest, DeterministicPerSeed) {
  const auto a = generate_dataset(3, 2, 42);
  const auto b = generate_dataset(3, 2, 42);
  EXPECT_EQ(a.features, b.features);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.ground_truth, b.ground_truth);
}

// Label frequencies per decile of the generating probability stay inside
// 3-sigma binomial bands.
TEST(DatasetTest, LabelFrequenciesMatchGeneratingModel) {
  const SyntheticDataset data = generate_dataset(10000, 5, 1);
  std::vector<std::pair<double, bool>> samples;
  for (int i = 0; i < data.n(); ++i) {
    const double z = data.features.row(i).dot(data.ground_truth);
    samples.emplace_back(1.0 / (1.0 + std::exp(z)), data.labels[i] > 0.0);
  }
  std::sort(samples.begin(), samples.end());
  const size_t bucket = samples.size() / 10;
  for (size_t b = 0; b < 10; ++b) {
    double expected = 0.0;
    double hits = 0.0;
    for (size_t i = b * bucket; i < (b + 1) * bucket; ++i) {
      expected += samples[i].first;
      hits += samples[i].second ? 1.0 : 0.0;
    }
    const double p = expected / bucket;
    const double sigma = std::sqrt(bucket * p * (1.0 - p));
    EXPECT_NEAR(hits, expected, 3.0 * sigma + 1.0) << "decile " << b;
  }
}

TEST(LogisticProblemTest, GradientAtOrigin) {
  const SyntheticDataset data = generate_dataset(4, 3, 2);
  const ProblemSpec p = build_logistic_problem(data, 0.1, 0.1);
  for (int i = 0; i < 4; ++i) {
    const Evaluation e = p.objective(i, Vector::Zero(3));
    EXPECT_NEAR(e.value, std::log(2.0), 1e-15);
    const Vector expected = 0.5 * data.labels[i] * data.features.row(i).transpose();
    EXPECT_LT((e.subgradient - expected).norm(), 1e-15);
  }
}

TEST(LogisticProblemTest, ConstraintsAtOrigin) {
  const SyntheticDataset data = generate_dataset(2, 5, 2);
  const ProblemSpec p = build_logistic_problem(data, 0.1, 0.1);
  EXPECT_EQ(p.m, 10);
  EXPECT_EQ(p.radius, 1.0);
  EXPECT_EQ(p.lipschitz, 1.0);
  const Vector g = p.constraint_values(Vector::Zero(5));
  for (int k = 0; k < 10; ++k) EXPECT_DOUBLE_EQ(g[k], -0.1);
}

TEST(LogisticProblemTest, MatchesFiniteDifferences) {
  const SyntheticDataset data = generate_dataset(6, 4, 8);
  const ProblemSpec p = build_logistic_problem(data, 0.2, 0.2);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector x = RandomInBall(rng, 4, 0.9);
    const int i = trial % 6;
    const auto f = [&](const oracle::Vec& y) { return p.objective(i, FromStd(y)).value; };
    const oracle::Vec fd = oracle::finite_difference_gradient(f, ToStd(x));
    const Vector g = p.objective(i, x).subgradient;
    EXPECT_LE((g - FromStd(fd)).norm(), 1e-5 * std::max(1.0, g.norm()));
  }
}

TEST(LogisticProblemTest, StableForLargeArguments) {
  EXPECT_NEAR(softplus(800.0), 800.0, 1e-12);
  EXPECT_NEAR(softplus(-800.0), 0.0, 1e-300);
  EXPECT_NEAR(logistic_sigmoid(-800.0), 0.0, 1e-300);
  EXPECT_NEAR(logistic_sigmoid(800.0), 1.0, 1e-15);
  EXPECT_NEAR(softplus(0.3), std::log1p(std::exp(0.3)), 1e-15);
}

TEST(LogisticProblemTest, RejectsNonPositiveMargins) {
  const SyntheticDataset data = generate_dataset(2, 2, 2);
  EXPECT_THROW(build_logistic_problem(data, 0.0, 0.1), InvalidArgument);
  EXPECT_THROW(build_hinge_problem(data, 0.1, -1.0), InvalidArgument);
}

TEST(HingeProblemTest, OriginValueAndSubgradient) {
  const SyntheticDataset data = generate_dataset(3, 3, 4);
  const ProblemSpec p = build_hinge_problem(data, 0.1, 0.1);
  for (int i = 0; i < 3; ++i) {
    const Evaluation e = p.objective(i, Vector::Zero(3));
    EXPECT_DOUBLE_EQ(e.value, 1.0);
    const Vector expected = -data.labels[i] * data.features.row(i).transpose();
    EXPECT_LT((e.subgradient - expected).norm(), 1e-15);
  }
}

TEST(HingeProblemTest, ZeroSubgradientAtKink) {
  SyntheticDataset data;
  data.features = Matrix::Zero(1, 2);
  data.features(0, 0) = 1.0;
  data.labels = Vector::Ones(1);
  data.ground_truth = Vector::Zero(2);
  const ProblemSpec p = build_hinge_problem(data, 0.1, 0.1);
  Vector x(2);
  x << 1.0, 0.0;  // margin 1 - <a, x> = 0
  const Evaluation e = p.objective(0, x);
  EXPECT_DOUBLE_EQ(e.value, 0.0);
  EXPECT_EQ(e.subgradient, Vector::Zero(2));
  // The zero vector is a subgradient: check on both sides of the kink.
  for (double s : {-0.5, 0.5}) {
    Vector y = x;
    y[0] += s;
    EXPECT_GE(p.objective(0, y).value, e.value + e.subgradient.dot(y - x) - 1e-15);
  }
}

TEST(FeasibilityReportTest, Examples) {
  const SyntheticDataset data = generate_dataset(2, 3, 1);
  const ProblemSpec p = build_logistic_problem(data, 0.1, 0.1);
  const FeasibilityReport origin = feasibility_report(p, Vector::Zero(3));
  EXPECT_EQ(origin.violations, Vector::Zero(6));
  EXPECT_EQ(origin.norm_excess, 0.0);

  Vector x = Vector::Zero(3);
  x[0] = 0.2;
  const FeasibilityReport r = feasibility_report(p, x);
  for (int k = 0; k < 6; ++k) {
    EXPECT_NEAR(r.violations[k], k == 3 ? 0.1 : 0.0, 1e-15) << k;
  }

  x << 2.0, 0.0, 0.0;
  EXPECT_NEAR(feasibility_report(p, x).norm_excess, 1.0, 1e-15);
  EXPECT_THROW(feasibility_report(p, Vector::Zero(2)), InvalidArgument);
}

// Subgradient inequality and norm bound at random points for both
// families.
TEST(ProblemPropertyTest, SubgradientsAreValidAndBounded) {
  const SyntheticDataset data = generate_dataset(10, 4, 6);
  std::mt19937_64 rng(7);
  for (const ProblemSpec& p :
       {build_logistic_problem(data, 0.1, 0.3), build_hinge_problem(data, 0.2, 0.1)}) {
    for (int trial = 0; trial < 1000; ++trial) {
      const Vector x = RandomInBall(rng, p.d, p.radius);
      const int i = trial % p.n;
      const Evaluation f = p.objective(i, x);
      EXPECT_LE(f.subgradient.norm(), p.lipschitz + 1e-12);
      std::vector<Evaluation> gs;
      for (int k = 0; k < p.m; ++k) {
        gs.push_back(p.constraint(k, x));
        EXPECT_LE(gs.back().subgradient.norm(), p.lipschitz + 1e-12);
      }
      for (int s = 0; s < 10; ++s) {
        const Vector y = RandomInBall(rng, p.d, p.radius);
        EXPECT_GE(p.objective(i, y).value, f.value + f.subgradient.dot(y - x) - 1e-12);
        const int k = s % p.m;
        EXPECT_GE(p.constraint(k, y).value,
                  gs[k].value + gs[k].subgradient.dot(y - x) - 1e-12);
      }
    }
  }
}

TEST(ProblemPropertyTest, LipschitzSpotCheck) {
  const SyntheticDataset data = generate_dataset(20, 5, 2);
  const LipschitzReport r =
      spot_check_lipschitz(build_logistic_problem(data, 0.1, 0.1), 200, 1);
  EXPECT_EQ(r.points_checked, 200);
  EXPECT_EQ(r.violations, 0);
  EXPECT_LE(r.worst_norm, 1.0 + 1e-12);
}

TEST(ProblemSpecTest, CumulativeMatchesAverage) {
  const SyntheticDataset data = generate_dataset(9, 3, 3);
  const ProblemSpec p = build_logistic_problem(data, 0.1, 0.1);
  std::mt19937_64 rng(1);
  const Vector x = RandomInBall(rng, 3, 1.0);
  double value = 0.0;
  Vector grad = Vector::Zero(3);
  for (int i = 0; i < 9; ++i) {
    const Evaluation e = p.objective(i, x);
    value += e.value / 9.0;
    grad += e.subgradient / 9.0;
  }
  const Evaluation c = p.cumulative_objective(x);
  EXPECT_NEAR(c.value, value, 1e-14);
  EXPECT_LT((c.subgradient - grad).norm(), 1e-14);
}

TEST(ProblemSpecTest, ValidateCatchesMismatch) {
  const SyntheticDataset data = generate_dataset(3, 3, 3);
  ProblemSpec p = build_logistic_problem(data, 0.1, 0.1);
  EXPECT_NO_THROW(p.validate());
  p.n = 4;
  EXPECT_THROW(p.validate(), InvalidArgument);
}

}  // namespace
}  // namespace drpd
