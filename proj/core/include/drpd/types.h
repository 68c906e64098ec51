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

#ifndef DRPD_TYPES_H_
#define DRPD_TYPES_H_

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace drpd {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad parameters or inconsistent dimensions. The CLI maps it to exit code 2.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A random graph generator could not produce a connected graph.
class ConnectivityError : public Error {
 public:
  using Error::Error;
};

// A numerical routine failed (non-convergence, non-finite values, a
// post-hoc validation that did not hold).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace drpd

#endif  // DRPD_TYPES_H_
