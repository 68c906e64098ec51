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

#include "drpd/graph.h"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "oracles.h"

namespace drpd {
namespace {

void ExpectTopologyInvariants(const GraphTopology& g) {
  std::vector<int> counted(g.num_nodes(), 0);
  std::set<std::pair<int, int>> seen;
  for (auto [i, j] : g.edges()) {
    EXPECT_NE(i, j);
    EXPECT_GE(i, 0);
    EXPECT_LT(j, g.num_nodes());
    EXPECT_TRUE(seen.insert({i, j}).second) << "duplicate edge";
    ++counted[i];
    ++counted[j];
  }
  for (int i = 0; i < g.num_nodes(); ++i) EXPECT_EQ(g.degree(i), counted[i]);
  EXPECT_TRUE(oracle::bfs_connected(g.num_nodes(), g.edges()));
}

TEST(GraphTopologyTest, RejectsSelfLoopsAndOutOfRange) {
  EXPECT_THROW(GraphTopology(3, {{0, 0}, {1, 2}}), InvalidArgument);
  EXPECT_THROW(GraphTopology(3, {{0, 3}, {1, 2}}), InvalidArgument);
  EXPECT_THROW(GraphTopology(3, {{0, 1}, {1, 0}, {1, 2}}), InvalidArgument);
}

TEST(GraphTopologyTest, RejectsDisconnected) {
  EXPECT_THROW(GraphTopology(4, {{0, 1}, {2, 3}}), ConnectivityError);
}

TEST(GraphTopologyTest, NormalizesEdgeOrder) {
  const GraphTopology g(3, {{2, 1}, {1, 0}});
  ASSERT_EQ(g.num_edges(), 2);
  EXPECT_EQ(g.edges()[0], std::make_pair(0, 1));
  EXPECT_EQ(g.edges()[1], std::make_pair(1, 2));
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(WattsStrogatzTest, ZeroRewiringGivesRingLattice) {
  const GraphTopology g = generate_watts_strogatz(6, 2, 0.0, 3);
  ASSERT_EQ(g.num_edges(), 6);
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(g.degree(i), 2);
    EXPECT_TRUE(g.has_edge(i, (i + 1) % 6));
  }
}

TEST(WattsStrogatzTest, PaperSizeKeepsEdgeCount) {
  const GraphTopology g = generate_watts_strogatz(100, 20, 0.02, 7);
  EXPECT_EQ(g.num_nodes(), 100);
  EXPECT_EQ(g.num_edges(), 1000);
  ExpectTopologyInvariants(g);
}

TEST(WattsStrogatzTest, InvalidParameters) {
  EXPECT_THROW(generate_watts_strogatz(4, 4, 0.1, 1), InvalidArgument);
  EXPECT_THROW(generate_watts_strogatz(10, 3, 0.1, 1), InvalidArgument);
  EXPECT_THROW(generate_watts_strogatz(10, 0, 0.1, 1), InvalidArgument);
  EXPECT_THROW(generate_watts_strogatz(10, 2, 1.5, 1), InvalidArgument);
}

TEST(WattsStrogatzTest, DeterministicPerSeed) {
  const auto a = generate_watts_strogatz(60, 6, 0.3, 11);
  const auto b = generate_watts_strogatz(60, 6, 0.3, 11);
  const auto c = generate_watts_strogatz(60, 6, 0.3, 12);
  EXPECT_EQ(a.edges(), b.edges());
  EXPECT_NE(a.edges(), c.edges());
}

TEST(ErdosRenyiTest, FullProbabilityIsComplete) {
  const GraphTopology g = generate_erdos_renyi(5, 1.0, 9);
  EXPECT_EQ(g.num_edges(), 10);
}

TEST(ErdosRenyiTest, EdgeCountWithinBinomialBand) {
  const GraphTopology g = generate_erdos_renyi(100, 0.06, 3);
  const double pairs = 4950.0;
  const double mean = 0.06 * pairs;
  const double sigma = std::sqrt(pairs * 0.06 * 0.94);
  EXPECT_NEAR(g.num_edges(), mean, 4.0 * sigma);
  ExpectTopologyInvariants(g);
}

TEST(ErdosRenyiTest, TwoNodesIsAnEdge) {
  const GraphTopology g = generate_erdos_renyi(2, 0.5, 4);
  EXPECT_EQ(g.num_edges(), 1);
}

TEST(ErdosRenyiTest, SparseProbabilityFailsAfterRetries) {
  EXPECT_THROW(generate_erdos_renyi(200, 0.001, 1), ConnectivityError);
}

TEST(ErdosRenyiTest, InvalidProbability) {
  EXPECT_THROW(generate_erdos_renyi(5, 0.0, 1), InvalidArgument);
  EXPECT_THROW(generate_erdos_renyi(5, 1.1, 1), InvalidArgument);
}

TEST(Lattice8Test, TwoByTwoIsComplete) {
  const GraphTopology g = generate_lattice8(2, 2);
  EXPECT_EQ(g.num_edges(), 6);
}

TEST(Lattice8Test, ThreeByThreeDegrees) {
  const GraphTopology g = generate_lattice8(3, 3);
  EXPECT_EQ(g.degree(4), 8);
  for (int corner : {0, 2, 6, 8}) EXPECT_EQ(g.degree(corner), 3);
  for (int side : {1, 3, 5, 7}) EXPECT_EQ(g.degree(side), 5);
}

TEST(Lattice8Test, TenByTen) {
  const GraphTopology g = generate_lattice8(10, 10);
  EXPECT_EQ(g.num_nodes(), 100);
  // Horizontal and vertical edges plus both diagonal directions.
  EXPECT_EQ(g.num_edges(), 10 * 9 * 2 + 9 * 9 * 2);
  ExpectTopologyInvariants(g);
}

TEST(Lattice8Test, Degenerate) {
  EXPECT_THROW(generate_lattice8(1, 5), InvalidArgument);
}

TEST(BarbellTest, SmallestIsPath) {
  const GraphTopology g = generate_barbell(4, 1);
  EXPECT_EQ(g.num_edges(), 3);
  ExpectTopologyInvariants(g);
}

TEST(BarbellTest, HundredNodes) {
  const GraphTopology g = generate_barbell(100, 1);
  EXPECT_EQ(g.num_edges(), 2 * 1225 + 1);
  EXPECT_TRUE(g.has_edge(0, 50));
}

TEST(BarbellTest, BridgePairing) {
  const GraphTopology g = generate_barbell(10, 3);
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(g.has_edge(i, 5 + i));
  EXPECT_FALSE(g.has_edge(3, 8));
}

TEST(BarbellTest, InvalidParameters) {
  EXPECT_THROW(generate_barbell(6, 4), InvalidArgument);
  EXPECT_THROW(generate_barbell(7, 1), InvalidArgument);
  EXPECT_THROW(generate_barbell(2, 1), InvalidArgument);
  EXPECT_THROW(generate_barbell(8, 0), InvalidArgument);
}

TEST(GraphPropertyTest, RandomFamiliesSatisfyInvariants) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 10 + static_cast<int>(seed) * 7;
    ExpectTopologyInvariants(generate_watts_strogatz(n, 4, 0.2, seed));
    ExpectTopologyInvariants(generate_erdos_renyi(n, 0.25, seed));
  }
}

}  // namespace
}  // namespace drpd
