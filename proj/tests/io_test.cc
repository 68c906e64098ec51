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

#include "drpd/io.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "drpd/consensus.h"
#include "drpd/engine.h"

namespace drpd {
namespace {

TEST(EdgeListTest, RoundTrip) {
  const GraphTopology g = generate_watts_strogatz(30, 6, 0.3, 4);
  std::stringstream buf;
  write_edge_list(buf, g);
  const GraphTopology back = read_edge_list(buf);
  EXPECT_EQ(back.num_nodes(), 30);
  EXPECT_EQ(back.edges(), g.edges());
}

TEST(EdgeListTest, MalformedInputThrows) {
  std::istringstream self_loop("3\n0 1\n1 1\n");
  EXPECT_THROW(read_edge_list(self_loop), InvalidArgument);
  std::istringstream garbage("3\n0 x\n");
  EXPECT_THROW(read_edge_list(garbage), InvalidArgument);
  std::istringstream disconnected("4\n0 1\n2 3\n");
  EXPECT_THROW(read_edge_list(disconnected), ConnectivityError);
}

TEST(MatrixCsvTest, RoundTripIsExact) {
  const Matrix w = lazy_metropolis(generate_erdos_renyi(25, 0.3, 2)).entries();
  std::stringstream buf;
  write_matrix_csv(buf, w);
  EXPECT_EQ(read_matrix_csv(buf), w);
}

TEST(MatrixCsvTest, RaggedRowsThrow) {
  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(read_matrix_csv(ragged), InvalidArgument);
}

TEST(DatasetCsvTest, RoundTripIsExact) {
  const SyntheticDataset data = generate_dataset(40, 6, 3);
  std::stringstream buf;
  write_dataset_csv(buf, data);
  const SyntheticDataset back = read_dataset_csv(buf);
  EXPECT_EQ(back.features, data.features);
  EXPECT_EQ(back.labels, data.labels);
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int k = 0; k < 10000; ++k) {
    const double v = u(rng) * std::pow(10.0, k % 40 - 20);
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
}

TEST(TraceCsvTest, HeaderAndRows) {
  const ProblemSpec p = build_logistic_problem(generate_dataset(6, 2, 1), 0.1, 0.1);
  const ConsensusMatrix w = lazy_metropolis(generate_erdos_renyi(6, 0.7, 1));
  RunConfig cfg;
  cfg.iterations = 20;
  cfg.record_every = 10;
  const Trace trace = run(p, w, cfg);
  std::ostringstream out;
  write_trace_csv(out, trace);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line,
            "t,eps_G,delta_G,max_lambda_norm,consensus_diameter,bound_margin_thm2,"
            "violation_sq,lambda_sq_sum,max_gap,thm2_bound");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_NE(line.find("nan"), std::string::npos);  // no reference
  }
  EXPECT_EQ(rows, 3);
  EXPECT_EQ(trace_columns().size(), 10u);

  std::ostringstream series;
  write_metric_series(series, trace, "lambda_sq_sum");
  EXPECT_EQ(series.str().substr(0, series.str().find('\n')), "t,lambda_sq_sum");
  EXPECT_THROW(write_metric_series(series, trace, "bogus"), InvalidArgument);
}

TEST(AveragesCsvTest, OneRowPerAgent) {
  const ProblemSpec p = build_logistic_problem(generate_dataset(4, 3, 1), 0.1, 0.1);
  RunConfig cfg;
  const auto s = initial_states(p, cfg);
  std::ostringstream out;
  write_averages_csv(out, s);
  std::stringstream back(out.str());
  const Matrix m = read_matrix_csv(back);
  EXPECT_EQ(m.rows(), 4);
  EXPECT_EQ(m.cols(), 3);
}

}  // namespace
}  // namespace drpd
