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

#ifndef DRPD_IO_H_
#define DRPD_IO_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "drpd/graph.h"
#include "drpd/problem.h"
#include "drpd/state.h"
#include "drpd/types.h"

namespace drpd {

// Edge list: first line n, then one "i j" pair per line, 0-indexed.
void write_edge_list(std::ostream& out, const GraphTopology& g);
GraphTopology read_edge_list(std::istream& in);

// One matrix row per line, comma separated, round-trip precision.
void write_matrix_csv(std::ostream& out, const Matrix& m);
Matrix read_matrix_csv(std::istream& in);

// First line "d,n", then one "b,a_1,...,a_d" row per sample.
void write_dataset_csv(std::ostream& out, const SyntheticDataset& data);
SyntheticDataset read_dataset_csv(std::istream& in);

// Trace columns, in order.
const std::vector<std::string>& trace_columns();

// Header t,eps_G,delta_G,max_lambda_norm,consensus_diameter,
// bound_margin_thm2 followed by violation_sq,lambda_sq_sum,max_gap,
// thm2_bound. NaN is written as "nan".
void write_trace_csv(std::ostream& out, const Trace& trace);

// Two-column (t, value) series for one metric.
void write_metric_series(std::ostream& out, const Trace& trace,
                         const std::string& column);

// Final running averages, one agent per row.
void write_averages_csv(std::ostream& out, const std::vector<AgentState>& s);

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace drpd

#endif  // DRPD_IO_H_
