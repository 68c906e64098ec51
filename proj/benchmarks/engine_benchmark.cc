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

#include <benchmark/benchmark.h>

#include <random>

#include "drpd/consensus.h"
#include "drpd/engine.h"
#include "drpd/graph.h"
#include "drpd/problem.h"
#include "drpd/reference.h"

namespace {

using drpd::Vector;

Vector random_vector(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 2.0);
  Vector v(d);
  for (int k = 0; k < d; ++k) v[k] = normal(rng);
  return v;
}

void BM_ProjectBall(benchmark::State& state) {
  const Vector x = random_vector(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(drpd::project_ball(x, 1.0));
}
BENCHMARK(BM_ProjectBall)->Arg(5)->Arg(50)->Arg(500);

void BM_ProjectBoxBall(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Vector x = random_vector(d, 2);
  const drpd::Box box{Vector::Constant(d, -0.3), Vector::Constant(d, 0.3)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(drpd::project_box_ball(x, box, 1.0));
  }
}
BENCHMARK(BM_ProjectBoxBall)->Arg(5)->Arg(50);

void BM_Step(benchmark::State& state, drpd::Variant variant) {
  const int n = static_cast<int>(state.range(0));
  const auto data = drpd::generate_dataset(n, 5, 1);
  const auto p = drpd::build_logistic_problem(data, 0.1, 0.1);
  const auto w =
      drpd::lazy_metropolis(drpd::generate_watts_strogatz(n, 20, 0.02, 1));
  drpd::RunConfig cfg;
  cfg.variant = variant;
  cfg.threads = static_cast<int>(state.range(1));
  const drpd::SamplingStreams streams(cfg.seed);
  auto states = drpd::initial_states(p, cfg);
  long t = 0;
  for (auto _ : state) {
    states = variant == drpd::Variant::kStochastic
                 ? drpd::step_stochastic(states, p, w, t, cfg, streams)
                 : drpd::step_deterministic(states, p, w, t, cfg);
    ++t;
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK_CAPTURE(BM_Step, deterministic, drpd::Variant::kDeterministic)
    ->Args({50, 1})
    ->Args({100, 1})
    ->Args({200, 1})
    ->Args({200, 4});
BENCHMARK_CAPTURE(BM_Step, stochastic, drpd::Variant::kStochastic)
    ->Args({100, 1});

void BM_SpectralGap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = drpd::generate_erdos_renyi(n, 0.1, 3);
  const auto w = drpd::lazy_metropolis(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(drpd::second_singular_value(w.entries()));
  }
}
BENCHMARK(BM_SpectralGap)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
