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

#ifndef TVADMM_LINALG_HPP_
#define TVADMM_LINALG_HPP_

// Small dense linear algebra: symmetric matrices, a cyclic Jacobi
// eigensolver and an SPD Cholesky factorization. Sized for the block
// dimensions met in the filters (n up to a few dozen).

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace tvadmm {

// Dense row-major square matrix.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  static Matrix identity(std::size_t n);

  std::size_t dim() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Dense symmetric matrix. Every constructor leaves the storage exactly
// symmetric; inputs whose asymmetry exceeds kSymmetryTolerance (relative to
// the largest entry) are rejected.
class SymMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-12;

  // n x n zero matrix; n >= 1.
  explicit SymMatrix(std::size_t n);

  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(std::span<const double> diag);
  // Row-major n x n input. Throws InvalidInputError on non-finite entries or
  // asymmetry above tolerance; tiny asymmetry is averaged away.
  static SymMatrix from_row_major(std::size_t n, std::span<const double> values);
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);
  // y y^T.
  static SymMatrix outer(std::span<const double> y);

  std::size_t dim() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }
  // Writes (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double value);

  std::span<const double> data() const noexcept { return data_; }

  double frobenius_norm() const;
  double max_abs() const;
  double trace() const;
  bool is_diagonal() const;

  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& operator-=(const SymMatrix& other);
  SymMatrix& operator*=(double s);

  std::vector<double> multiply(std::span<const double> x) const;

 private:
  std::size_t n_;
  std::vector<double> data_;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(double s, SymMatrix a);

struct EigenDecomposition {
  // Ascending.
  std::vector<double> eigenvalues;
  // Column k pairs with eigenvalues[k]; the first component of each column
  // with magnitude above 1e-12 is positive.
  Matrix eigenvectors;

  // Q diag(f(lambda)) Q^T for a spectral map supplied as new eigenvalues.
  SymMatrix reconstruct(std::span<const double> values) const;
  SymMatrix reconstruct() const { return reconstruct(eigenvalues); }
};

// Cyclic Jacobi rotations. Stops once the off-diagonal Frobenius norm drops
// below 1e-12 * ||A||_F; throws EigenSolverError after 100 sweeps.
EigenDecomposition sym_eig(const SymMatrix& a);

// Lower-triangular Cholesky factor L with L L^T = A.
class CholeskyFactor {
 public:
  std::size_t dim() const noexcept { return lower_.dim(); }
  double operator()(std::size_t i, std::size_t j) const { return lower_(i, j); }
  const Matrix& lower() const noexcept { return lower_; }

  // sum_i 2 log L_ii.
  double log_det() const;

 private:
  friend CholeskyFactor spd_factor(const SymMatrix& a);
  explicit CholeskyFactor(Matrix lower) : lower_(std::move(lower)) {}

  Matrix lower_;
};

// Throws NotPositiveDefiniteError naming the zero-based pivot index.
CholeskyFactor spd_factor(const SymMatrix& a);

std::vector<double> spd_solve(const CholeskyFactor& factor,
                              std::span<const double> b);
// Solves L y = b only.
std::vector<double> forward_solve(const CholeskyFactor& factor,
                                  std::span<const double> b);

SymMatrix spd_inverse(const CholeskyFactor& factor);

// True when the smallest eigenvalue exceeds rel_tol times the largest
// eigenvalue magnitude (and the matrix is not zero).
bool is_positive_definite(const SymMatrix& a, double rel_tol = 1e-10);

}  // namespace tvadmm

#endif  // TVADMM_LINALG_HPP_
