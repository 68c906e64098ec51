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

#ifndef DRPD_CONSENSUS_H_
#define DRPD_CONSENSUS_H_

#include <vector>

#include "drpd/graph.h"
#include "drpd/types.h"

namespace drpd {

// Tolerance used when validating row and column sums.
inline constexpr double kStochasticTolerance = 1e-12;

// Doubly stochastic n x n mixing matrix with its second-largest singular
// value cached at construction.
class ConsensusMatrix {
 public:
  // Validates nonnegativity and double stochasticity within `tolerance`,
  // then computes sigma2. Throws NumericalError on violation.
  explicit ConsensusMatrix(Matrix entries,
                           double tolerance = kStochasticTolerance);

  int size() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }
  double sigma2() const { return sigma2_; }
  double spectral_gap() const { return 1.0 - sigma2_; }
  bool is_symmetric() const { return symmetric_; }

  // Column indices j with W(i, j) != 0, ascending (includes i when the
  // diagonal is nonzero). The engine mixes over these in this fixed order.
  const std::vector<int>& support(int i) const { return support_[i]; }

 private:
  Matrix entries_;
  double sigma2_;
  bool symmetric_;
  std::vector<std::vector<int>> support_;
};

// Second-largest singular value of w. Symmetric input goes through a full
// symmetric eigendecomposition (|eigenvalues|), anything else through SVD.
double second_singular_value(const Matrix& w);

// 1 - sigma2(W).
double spectral_gap(const ConsensusMatrix& w);

// Off-diagonal W_ij = 1 / (2 max(d_i + 1, d_j + 1)) on edges, diagonal
// completes each row to 1. Symmetric and diagonally dominant.
ConsensusMatrix lazy_metropolis(const GraphTopology& g);

// Weights built from the normalized Laplacian L = I - D^{-1/2} A D^{-1/2}:
//   degree-regular (degree d):  W = I - d/(d+1) L
//   otherwise:                  W = I - 1/(d_max+1) D^{1/2} L D^{1/2}
// The result is validated for double stochasticity within 1e-10.
ConsensusMatrix laplacian_weights(const GraphTopology& g);

// Whether every (i, j), i != j with W_ij > 0 is an edge of g.
bool respects_structure(const ConsensusMatrix& w, const GraphTopology& g);

// Largest |row sum - 1| and |column sum - 1|.
double stochasticity_error(const Matrix& w);

}  // namespace drpd

#endif  // DRPD_CONSENSUS_H_
