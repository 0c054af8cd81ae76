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

#ifndef TVADMM_PROX_HPP_
#define TVADMM_PROX_HPP_

// Closed-form proximal operators used in the block-separable ADMM step.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tvadmm/block_vector.hpp"
#include "tvadmm/linalg.hpp"

namespace tvadmm {

// Precomputed state for the Gaussian data-fit prox
//   argmin_x 1/2 (y_i - x)^T S^{-1} (y_i - x) + rho/2 ||x - vbar||^2
// with S the (fixed) noise covariance. S^{-1} y_i and the factorization of
// S^{-1} + rho I are formed once.
class GaussianProxCache {
 public:
  // Throws NotPositiveDefiniteError if sigma is not SPD, InvalidInputError on
  // dimension mismatch or rho <= 0.
  GaussianProxCache(const SymMatrix& sigma, const BlockVector& observations,
                    double rho);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t num_blocks() const noexcept { return sigma_inv_y_.num_blocks(); }
  double rho() const noexcept { return rho_; }
  bool diagonal() const noexcept { return diagonal_; }

  const BlockVector& sigma_inv_y() const noexcept { return sigma_inv_y_; }
  const SymMatrix& sigma_inv() const noexcept { return sigma_inv_; }

  // Writes the prox of block i evaluated at vbar into out.
  void apply(std::size_t i, std::span<const double> vbar,
             std::span<double> out) const;

 private:
  std::size_t dim_;
  double rho_;
  bool diagonal_;
  SymMatrix sigma_inv_;
  BlockVector sigma_inv_y_;
  std::optional<CholeskyFactor> system_factor_;
  // Diagonal fast path: 1 / (S_jj^{-1} + rho).
  std::vector<double> inv_system_diag_;
};

std::vector<double> prox_gaussian(const GaussianProxCache& cache, std::size_t i,
                                  std::span<const double> vbar);

// (1 - kappa / ||a||_2)_+ a, with S(0) = 0. Also the Frobenius-norm matrix
// threshold when a is a flattened matrix. Throws on kappa < 0.
std::vector<double> soft_threshold_group(std::span<const double> a,
                                         double kappa);
void soft_threshold_group(std::span<const double> a, double kappa,
                          std::span<double> out);

// Componentwise sign(a_j) max(|a_j| - kappa, 0). Throws on kappa < 0.
std::vector<double> soft_threshold_scalar(std::span<const double> a,
                                          double kappa);
void soft_threshold_scalar(std::span<const double> a, double kappa,
                           std::span<double> out);

// argmin_{X > 0} Tr(X S) - log det X + rho/2 ||X - V||_F^2, computed from the
// eigendecomposition rho V - S = Q diag(lambda) Q^T as
// X = Q diag((lambda + sqrt(lambda^2 + 4 rho)) / (2 rho)) Q^T.
SymMatrix prox_neg_logdet(const SymMatrix& v, const SymMatrix& scatter,
                          double rho);
// Single-observation form with S = y y^T.
SymMatrix prox_neg_logdet(const SymMatrix& v, std::span<const double> y,
                          double rho);

}  // namespace tvadmm

#endif  // TVADMM_PROX_HPP_
