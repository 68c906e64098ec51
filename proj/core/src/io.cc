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

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "drpd/metrics.h"

namespace drpd {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

double parse_double(const std::string& text) {
  std::string s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.pop_back();
  }
  size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) {
    ++start;
  }
  s = s.substr(start);
  if (s == "nan") return std::nan("");
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw InvalidArgument("bad number: '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    throw InvalidArgument("bad number: '" + text + "'");
  }
}

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return true;
  }
  return false;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_edge_list(std::ostream& out, const GraphTopology& g) {
  out << g.num_nodes() << '\n';
  for (const auto& [i, j] : g.edges()) out << i << ' ' << j << '\n';
}

GraphTopology read_edge_list(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw InvalidArgument("empty edge list");
  int n = 0;
  {
    std::istringstream head(line);
    if (!(head >> n)) throw InvalidArgument("edge list: bad node count");
  }
  std::vector<GraphTopology::Edge> edges;
  while (next_content_line(in, line)) {
    std::istringstream row(line);
    int i = 0;
    int j = 0;
    if (!(row >> i >> j)) throw InvalidArgument("edge list: bad line '" + line + "'");
    edges.emplace_back(i, j);
  }
  return GraphTopology(n, std::move(edges));
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

Matrix read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (next_content_line(in, line)) {
    std::vector<double> row;
    for (const auto& f : split_csv(line)) row.push_back(parse_double(f));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InvalidArgument("matrix csv: ragged rows");
    }
    rows.push_back(std::move(row));
  }
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size());
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

void write_dataset_csv(std::ostream& out, const SyntheticDataset& data) {
  out << data.d() << ',' << data.n() << '\n';
  for (int i = 0; i < data.n(); ++i) {
    out << format_double(data.labels[i]);
    for (int k = 0; k < data.d(); ++k) {
      out << ',' << format_double(data.features(i, k));
    }
    out << '\n';
  }
}

SyntheticDataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw InvalidArgument("empty dataset csv");
  const auto head = split_csv(line);
  if (head.size() != 2) throw InvalidArgument("dataset csv: header must be d,n");
  const int d = static_cast<int>(parse_double(head[0]));
  const int n = static_cast<int>(parse_double(head[1]));
  if (d <= 0 || n <= 0) throw InvalidArgument("dataset csv: bad d or n");
  SyntheticDataset data;
  data.features = Matrix(n, d);
  data.labels = Vector(n);
  for (int i = 0; i < n; ++i) {
    if (!next_content_line(in, line)) throw InvalidArgument("dataset csv: too few rows");
    const auto f = split_csv(line);
    if (static_cast<int>(f.size()) != d + 1) {
      throw InvalidArgument("dataset csv: row width differs from d + 1");
    }
    data.labels[i] = parse_double(f[0]);
    for (int k = 0; k < d; ++k) data.features(i, k) = parse_double(f[k + 1]);
  }
  return data;
}

const std::vector<std::string>& trace_columns() {
  static const std::vector<std::string> columns = {
      "t",           "eps_G",         "delta_G",       "max_lambda_norm",
      "consensus_diameter", "bound_margin_thm2", "violation_sq",
      "lambda_sq_sum", "max_gap",     "thm2_bound"};
  return columns;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  const auto& cols = trace_columns();
  for (size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << '\n';
  for (const auto& r : trace.records) {
    out << r.t;
    for (size_t c = 1; c < cols.size(); ++c) {
      out << ',' << format_double(record_column(r, cols[c]));
    }
    out << '\n';
  }
}

void write_metric_series(std::ostream& out, const Trace& trace,
                         const std::string& column) {
  out << "t," << column << '\n';
  for (const auto& r : trace.records) {
    out << r.t << ',' << format_double(record_column(r, column)) << '\n';
  }
}

void write_averages_csv(std::ostream& out, const std::vector<AgentState>& s) {
  for (const auto& agent : s) {
    const Vector avg = agent.average();
    for (Eigen::Index k = 0; k < avg.size(); ++k) {
      if (k > 0) out << ',';
      out << format_double(avg[k]);
    }
    out << '\n';
  }
}

}  // namespace drpd
