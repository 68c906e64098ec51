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

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace drpd {

double stochasticity_error(const Matrix& w) {
  const double rows = (w.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double cols = (w.colwise().sum().array() - 1.0).abs().maxCoeff();
  return std::max(rows, cols);
}

double second_singular_value(const Matrix& w) {
  if (w.rows() != w.cols()) throw InvalidArgument("matrix must be square");
  if (w.rows() < 2) return 0.0;
  Vector singular;
  if ((w - w.transpose()).cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(w, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("symmetric eigensolver did not converge");
    }
    singular = solver.eigenvalues().cwiseAbs();
  } else {
    Eigen::JacobiSVD<Matrix> svd(w);
    singular = svd.singularValues();
  }
  std::sort(singular.begin(), singular.end(), std::greater<>());
  return singular[1];
}

ConsensusMatrix::ConsensusMatrix(Matrix entries, double tolerance)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw InvalidArgument("consensus matrix must be square and non-empty");
  }
  if (!entries_.allFinite() || (entries_.array() < 0.0).any()) {
    throw NumericalError("consensus matrix has negative or non-finite entries");
  }
  const double err = stochasticity_error(entries_);
  if (err > tolerance) {
    throw NumericalError("matrix is not doubly stochastic (error " +
                         std::to_string(err) + ")");
  }
  symmetric_ = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff() == 0.0;
  sigma2_ = second_singular_value(entries_);
  const int n = size();
  support_.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (entries_(i, j) != 0.0) support_[i].push_back(j);
    }
  }
}

double spectral_gap(const ConsensusMatrix& w) { return w.spectral_gap(); }

ConsensusMatrix lazy_metropolis(const GraphTopology& g) {
  const int n = g.num_nodes();
  Matrix w = Matrix::Zero(n, n);
  for (const auto& [i, j] : g.edges()) {
    const double weight =
        1.0 / (2.0 * std::max(g.degree(i) + 1, g.degree(j) + 1));
    w(i, j) = weight;
    w(j, i) = weight;
  }
  for (int i = 0; i < n; ++i) w(i, i) = 1.0 - w.row(i).sum();
  return ConsensusMatrix(std::move(w));
}

ConsensusMatrix laplacian_weights(const GraphTopology& g) {
  const int n = g.num_nodes();
  Matrix adjacency = Matrix::Zero(n, n);
  for (const auto& [i, j] : g.edges()) {
    adjacency(i, j) = 1.0;
    adjacency(j, i) = 1.0;
  }
  Vector deg(n);
  for (int i = 0; i < n; ++i) deg[i] = g.degree(i);
  const Vector inv_sqrt = deg.cwiseSqrt().cwiseInverse();
  const Matrix identity = Matrix::Identity(n, n);
  const Matrix normalized =
      identity - inv_sqrt.asDiagonal() * adjacency * inv_sqrt.asDiagonal();

  Matrix w;
  if (g.is_regular()) {
    const double d = g.degree(0);
    w = identity - (d / (d + 1.0)) * normalized;
  } else {
    const Vector sqrt_deg = deg.cwiseSqrt();
    const double d_max = g.max_degree();
    w = identity - (1.0 / (d_max + 1.0)) * sqrt_deg.asDiagonal() *
                       normalized * sqrt_deg.asDiagonal();
  }
  // Entries off the graph support are zero in exact arithmetic.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && adjacency(i, j) == 0.0) w(i, j) = 0.0;
    }
  }
  w = (0.5 * (w + w.transpose())).eval();  // eval: transpose aliases w
  const double err = stochasticity_error(w);
  if (err > 1e-10) {
    throw NumericalError("laplacian weights failed stochasticity check (" +
                         std::to_string(err) + ")");
  }
  // Re-complete the diagonal so row sums hold to rounding.
  for (int i = 0; i < n; ++i) {
    w(i, i) = 0.0;
    w(i, i) = 1.0 - w.row(i).sum();
  }
  return ConsensusMatrix(std::move(w));
}

bool respects_structure(const ConsensusMatrix& w, const GraphTopology& g) {
  const int n = w.size();
  if (n != g.num_nodes()) return false;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool edge = g.has_edge(i, j);
      if (!edge && w(i, j) != 0.0) return false;
      if (edge && !(w(i, j) > 0.0)) return false;
    }
  }
  return true;
}

}  // namespace drpd
