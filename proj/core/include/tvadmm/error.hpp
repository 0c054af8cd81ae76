// Copyright 2026 The tvadmm Authors
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

#ifndef TVADMM_ERROR_HPP_
#define TVADMM_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tvadmm {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: dimension mismatches, non-finite entries, parameters
// outside their admissible range.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// An iterative kernel failed to reach its target, or produced non-finite
// values.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefiniteError : public Error {
 public:
  NotPositiveDefiniteError(std::size_t pivot, double value)
      : Error("matrix is not positive definite: pivot " +
              std::to_string(pivot) + " is " + std::to_string(value)),
        pivot_(pivot),
        value_(value) {}

  // Zero-based index of the first non-positive pivot.
  std::size_t pivot() const noexcept { return pivot_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t pivot_;
  double value_;
};

class EigenSolverError : public NumericalError {
 public:
  EigenSolverError(double off_diagonal_norm, int sweeps)
      : NumericalError("Jacobi eigensolver did not converge after " +
                       std::to_string(sweeps) + " sweeps (off-diagonal norm " +
                       std::to_string(off_diagonal_norm) + ")"),
        residual_(off_diagonal_norm) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// The objective is unbounded below for the given data and regularization.
class UnboundedProblemError : public Error {
 public:
  using Error::Error;
};

}  // namespace tvadmm

#endif  // TVADMM_ERROR_HPP_
