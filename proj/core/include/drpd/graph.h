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

#ifndef DRPD_GRAPH_H_
#define DRPD_GRAPH_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "drpd/types.h"

namespace drpd {

// Undirected, connected, simple graph over nodes 0..n-1.
//
// Construction validates the edge list (no self-loops, endpoints in range,
// no duplicates) and connectivity; a GraphTopology that exists is always a
// valid communication graph. Edges are stored as (i, j) with i < j, sorted.
class GraphTopology {
 public:
  using Edge = std::pair<int, int>;

  GraphTopology(int n, std::vector<Edge> edges);

  int num_nodes() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& degrees() const { return degrees_; }
  int degree(int i) const { return degrees_[i]; }

  // Sorted neighbor list of node i (excludes i).
  const std::vector<int>& neighbors(int i) const { return adjacency_[i]; }
  bool has_edge(int i, int j) const;

  bool is_regular() const;
  int max_degree() const;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<int> degrees_;
  std::vector<std::vector<int>> adjacency_;
};

// True when every node is reachable from node 0. Works on a raw edge list
// so generators can test candidates before constructing a GraphTopology.
bool is_connected(int n, const std::vector<GraphTopology::Edge>& edges);

// Random generators retry with seed+1, seed+2, ... (at most this many
// attempts in total) until the sample is connected.
inline constexpr int kMaxConnectivityAttempts = 100;

// Ring lattice where each node links to its k nearest neighbors (k/2 per
// side), then every lattice edge (i, i+j) has its far endpoint rewired with
// probability theta to a node chosen uniformly among the non-neighbors of i.
GraphTopology generate_watts_strogatz(int n, int k, double theta,
                                      std::uint64_t seed);

// G(n, p): every pair is an edge independently with probability p.
GraphTopology generate_erdos_renyi(int n, double p, std::uint64_t seed);

// rows x cols grid; each cell is adjacent to its (up to 8) Moore neighbors,
// without wraparound. Node index is r * cols + c.
GraphTopology generate_lattice8(int rows, int cols);

// Two cliques K_{n/2} (nodes [0, n/2) and [n/2, n)) joined by bridge_count
// edges i <-> n/2 + i.
GraphTopology generate_barbell(int n, int bridge_count);

}  // namespace drpd

#endif  // DRPD_GRAPH_H_
