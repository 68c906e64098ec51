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

#include <algorithm>
#include <queue>
#include <random>
#include <set>
#include <string>

#include "drpd/types.h"

namespace drpd {
namespace {

using Edge = GraphTopology::Edge;

Edge ordered(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

}  // namespace

GraphTopology::GraphTopology(int n, std::vector<Edge> edges)
    : n_(n), degrees_(n > 0 ? n : 0, 0), adjacency_(n > 0 ? n : 0) {
  if (n < 1) throw InvalidArgument("graph needs at least one node");
  for (auto& e : edges) {
    if (e.first == e.second) {
      throw InvalidArgument("self-loop at node " + std::to_string(e.first));
    }
    if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n) {
      throw InvalidArgument("edge endpoint out of range");
    }
    e = ordered(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw InvalidArgument("duplicate edge");
  }
  if (!is_connected(n, edges)) {
    throw ConnectivityError("graph is not connected");
  }
  edges_ = std::move(edges);
  for (const auto& [a, b] : edges_) {
    ++degrees_[a];
    ++degrees_[b];
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool GraphTopology::has_edge(int i, int j) const {
  const auto& list = adjacency_[i];
  return std::binary_search(list.begin(), list.end(), j);
}

bool GraphTopology::is_regular() const {
  return std::adjacent_find(degrees_.begin(), degrees_.end(),
                            std::not_equal_to<>()) == degrees_.end();
}

int GraphTopology::max_degree() const {
  return *std::max_element(degrees_.begin(), degrees_.end());
}

bool is_connected(int n, const std::vector<Edge>& edges) {
  if (n <= 1) return n == 1;
  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(n, false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  int reached = 1;
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int u : adj[v]) {
      if (!seen[u]) {
        seen[u] = true;
        ++reached;
        frontier.push(u);
      }
    }
  }
  return reached == n;
}

namespace {

std::vector<Edge> watts_strogatz_edges(int n, int k, double theta,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution rewire(theta);
  std::uniform_int_distribution<int> pick(0, n - 1);

  std::vector<std::set<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 1; j <= k / 2; ++j) {
      int v = (i + j) % n;
      adj[i].insert(v);
      adj[v].insert(i);
    }
  }
  // Same sweep order as the usual construction: by lattice distance, then
  // by node.
  for (int j = 1; j <= k / 2; ++j) {
    for (int i = 0; i < n; ++i) {
      if (!rewire(rng)) continue;
      int old_target = (i + j) % n;
      if (!adj[i].contains(old_target)) continue;  // already rewired away
      if (static_cast<int>(adj[i].size()) >= n - 1) continue;
      int target;
      do {
        target = pick(rng);
      } while (target == i || adj[i].contains(target));
      adj[i].erase(old_target);
      adj[old_target].erase(i);
      adj[i].insert(target);
      adj[target].insert(i);
    }
  }
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int v : adj[i]) {
      if (i < v) edges.emplace_back(i, v);
    }
  }
  return edges;
}

std::vector<Edge> erdos_renyi_edges(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution include(p);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (include(rng)) edges.emplace_back(i, j);
    }
  }
  return edges;
}

template <typename Sampler>
GraphTopology first_connected(int n, std::uint64_t seed, Sampler sample,
                              const char* family) {
  for (int attempt = 0; attempt < kMaxConnectivityAttempts; ++attempt) {
    auto edges = sample(seed + static_cast<std::uint64_t>(attempt));
    if (is_connected(n, edges)) return GraphTopology(n, std::move(edges));
  }
  throw ConnectivityError(std::string(family) +
                          ": no connected sample after " +
                          std::to_string(kMaxConnectivityAttempts) +
                          " attempts");
}

}  // namespace

GraphTopology generate_watts_strogatz(int n, int k, double theta,
                                      std::uint64_t seed) {
  if (k < 2 || k % 2 != 0) {
    throw InvalidArgument("watts_strogatz: k must be even and >= 2");
  }
  if (n <= k) throw InvalidArgument("watts_strogatz: need n > k");
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw InvalidArgument("watts_strogatz: theta must lie in [0, 1]");
  }
  return first_connected(
      n, seed,
      [&](std::uint64_t s) { return watts_strogatz_edges(n, k, theta, s); },
      "watts_strogatz");
}

GraphTopology generate_erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("erdos_renyi: need n >= 1");
  if (!(p > 0.0 && p <= 1.0)) {
    throw InvalidArgument("erdos_renyi: p must lie in (0, 1]");
  }
  return first_connected(
      n, seed, [&](std::uint64_t s) { return erdos_renyi_edges(n, p, s); },
      "erdos_renyi");
}

GraphTopology generate_lattice8(int rows, int cols) {
  if (rows < 2 || cols < 2) {
    throw InvalidArgument("lattice8: rows and cols must be >= 2");
  }
  std::vector<Edge> edges;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      // Forward half of the Moore neighborhood, so each edge appears once.
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) {
        edges.emplace_back(id(r, c), id(r + 1, c));
        if (c + 1 < cols) edges.emplace_back(id(r, c), id(r + 1, c + 1));
        if (c > 0) edges.emplace_back(id(r, c), id(r + 1, c - 1));
      }
    }
  }
  return GraphTopology(rows * cols, std::move(edges));
}

GraphTopology generate_barbell(int n, int bridge_count) {
  if (n % 2 != 0 || n / 2 < 2) {
    throw InvalidArgument("barbell: n must be even with n/2 >= 2");
  }
  const int half = n / 2;
  if (bridge_count < 1 || bridge_count > half) {
    throw InvalidArgument("barbell: bridge_count must lie in [1, n/2]");
  }
  std::vector<Edge> edges;
  for (int offset : {0, half}) {
    for (int i = 0; i < half; ++i) {
      for (int j = i + 1; j < half; ++j) {
        edges.emplace_back(offset + i, offset + j);
      }
    }
  }
  for (int i = 0; i < bridge_count; ++i) edges.emplace_back(i, half + i);
  return GraphTopology(n, std::move(edges));
}

}  // namespace drpd
