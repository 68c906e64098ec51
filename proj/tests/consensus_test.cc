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

#include "drpd/consensus.h"

#include <gtest/gtest.h>

#include "drpd/graph.h"
#include "oracles.h"

namespace drpd {
namespace {

oracle::Dense ToDense(const Matrix& m) {
  oracle::Dense d(m.rows(), oracle::Vec(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) d[i][j] = m(i, j);
  return d;
}

GraphTopology Star(int n) {
  std::vector<GraphTopology::Edge> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
  return GraphTopology(n, edges);
}

GraphTopology Complete(int n) {
  std::vector<GraphTopology::Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return GraphTopology(n, edges);
}

TEST(ConsensusMatrixTest, RejectsNonStochastic) {
  Matrix m(2, 2);
  m << 0.6, 0.5, 0.4, 0.5;
  EXPECT_THROW(ConsensusMatrix{m}, NumericalError);
  m << 1.2, -0.2, -0.2, 1.2;
  EXPECT_THROW(ConsensusMatrix{m}, NumericalError);
}

TEST(LazyMetropolisTest, TwoNodePath) {
  const ConsensusMatrix w = lazy_metropolis(GraphTopology(2, {{0, 1}}));
  EXPECT_DOUBLE_EQ(w(0, 0), 0.75);
  EXPECT_DOUBLE_EQ(w(0, 1), 0.25);
  EXPECT_DOUBLE_EQ(w(1, 0), 0.25);
  EXPECT_DOUBLE_EQ(w(1, 1), 0.75);
}

TEST(LazyMetropolisTest, CompleteGraphClosedForm) {
  for (int n : {3, 5, 12}) {
    const ConsensusMatrix w = lazy_metropolis(Complete(n));
    EXPECT_NEAR(w(0, 1), 1.0 / (2.0 * n), 1e-15);
    EXPECT_NEAR(w(0, 0), (n + 1.0) / (2.0 * n), 1e-15);
    EXPECT_NEAR(w.sigma2(), 0.5, 1e-12);
    EXPECT_NEAR(spectral_gap(w), 0.5, 1e-12);
  }
}

TEST(LaplacianWeightsTest, ThreeCycle) {
  const ConsensusMatrix w =
      laplacian_weights(GraphTopology(3, {{0, 1}, {1, 2}, {0, 2}}));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(w(i, j), 1.0 / 3.0, 1e-15);
}

TEST(LaplacianWeightsTest, TwoNodes) {
  const ConsensusMatrix w = laplacian_weights(GraphTopology(2, {{0, 1}}));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(w(i, j), 0.5, 1e-15);
}

TEST(LaplacianWeightsTest, StarTakesNonRegularBranch) {
  const GraphTopology g = Star(6);
  ASSERT_FALSE(g.is_regular());
  const ConsensusMatrix w = laplacian_weights(g);
  EXPECT_LE(stochasticity_error(w.entries()), 1e-12);
  // I - (D - A) / (dmax + 1) with dmax = 5.
  EXPECT_NEAR(w(0, 0), 1.0 - 5.0 / 6.0, 1e-15);
  EXPECT_NEAR(w(0, 3), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(w(2, 2), 1.0 - 1.0 / 6.0, 1e-15);
  EXPECT_TRUE(respects_structure(w, g));
}

TEST(SpectralGapTest, UniformAveragingHasUnitGap) {
  const ConsensusMatrix w(Matrix::Constant(7, 7, 1.0 / 7.0));
  EXPECT_NEAR(spectral_gap(w), 1.0, 1e-12);
}

TEST(SpectralGapTest, NonSymmetricUsesSingularValues) {
  // Doubly stochastic permutation mix: singular values are all 1 for a
  // pure permutation; a lazy version has sigma2 = |0.5 + 0.5 e^{2 pi i/3}|.
  Matrix p = Matrix::Zero(3, 3);
  p(0, 1) = p(1, 2) = p(2, 0) = 1.0;
  const Matrix w = 0.5 * Matrix::Identity(3, 3) + 0.5 * p;
  EXPECT_NEAR(second_singular_value(w), 0.5, 1e-12);
}

TEST(SpectralGapTest, BarbellGapBelowWattsStrogatz) {
  const double bar = spectral_gap(lazy_metropolis(generate_barbell(100, 1)));
  const double ws =
      spectral_gap(lazy_metropolis(generate_watts_strogatz(100, 20, 0.02, 1)));
  EXPECT_LT(bar, ws);
}

TEST(SpectralGapTest, MatchesJacobiOracle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 5 + static_cast<int>(seed) * 5;
    for (const GraphTopology& g :
         {generate_erdos_renyi(n, 0.4, seed), generate_watts_strogatz(n, 4, 0.3, seed)}) {
      for (const ConsensusMatrix& w : {lazy_metropolis(g), laplacian_weights(g)}) {
        EXPECT_NEAR(w.sigma2(), oracle::second_singular_symmetric(ToDense(w.entries())),
                    1e-8);
      }
    }
  }
}

TEST(ConsensusPropertyTest, LazyMetropolisInvariants) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 8 + static_cast<int>(seed) * 11;
    for (const GraphTopology& g :
         {generate_watts_strogatz(n, 4, 0.1, seed), generate_erdos_renyi(n, 0.3, seed),
          generate_barbell(n - n % 2, 2), generate_lattice8(2, n / 2)}) {
      const ConsensusMatrix w = lazy_metropolis(g);
      EXPECT_LE(stochasticity_error(w.entries()), 1e-12);
      EXPECT_TRUE(respects_structure(w, g));
      EXPECT_TRUE(w.is_symmetric());
      EXPECT_GE(w.entries().minCoeff(), 0.0);
      for (int i = 0; i < g.num_nodes(); ++i) {
        const double off = w.entries().row(i).sum() - w(i, i);
        EXPECT_GE(w(i, i), off - 1e-15);
      }
      EXPECT_LT(w.sigma2(), 1.0);
      EXPECT_LE(1.0 / (1.0 - w.sigma2()), 71.0 * n * n);
    }
  }
}

TEST(ConsensusPropertyTest, LaplacianWeightsOnIrregularGraphs) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 30 + static_cast<int>(seed) * 17;
    for (const GraphTopology& g :
         {generate_watts_strogatz(n, 6, 0.3, seed), generate_erdos_renyi(n, 0.2, seed),
          generate_barbell(n - n % 2, 1), generate_lattice8(3, n / 3)}) {
      ASSERT_FALSE(g.is_regular());
      const ConsensusMatrix w = laplacian_weights(g);
      EXPECT_TRUE(w.is_symmetric());
      EXPECT_LE(stochasticity_error(w.entries()), 1e-12);
      EXPECT_TRUE(respects_structure(w, g));
      EXPECT_GE(w.entries().minCoeff(), 0.0);
      // Off-diagonal weight is 1 / (d_max + 1) on every edge.
      const double expected = 1.0 / (g.max_degree() + 1.0);
      for (const auto& [i, j] : g.edges()) EXPECT_NEAR(w(i, j), expected, 1e-15);
    }
  }
}

TEST(ConsensusMatrixTest, SupportListsNonZeroEntriesInOrder) {
  const ConsensusMatrix w = lazy_metropolis(Star(4));
  EXPECT_EQ(w.support(0), (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(w.support(2), (std::vector<int>{0, 2}));
}

}  // namespace
}  // namespace drpd
