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

#include "tvadmm/prox.hpp"

#include <cmath>
#include <string>

#include "tvadmm/error.hpp"

namespace tvadmm {

namespace {

// (lambda + sqrt(lambda^2 + 4 rho)) / (2 rho), rewritten for lambda < 0 to
// avoid cancellation so the result stays strictly positive.
double logdet_eigenvalue(double lam, double rho) {
  const double root = std::sqrt(lam * lam + 4.0 * rho);
  return lam >= 0.0 ? (lam + root) / (2.0 * rho) : 2.0 / (root - lam);
}

void check_kappa(double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw InvalidInputError("soft threshold: kappa must be finite and >= 0");
  }
}

}  // namespace

GaussianProxCache::GaussianProxCache(const SymMatrix& sigma,
                                     const BlockVector& observations,
                                     double rho)
    : dim_(sigma.dim()),
      rho_(rho),
      diagonal_(sigma.is_diagonal()),
      sigma_inv_(sigma.dim()),
      sigma_inv_y_(observations.num_blocks(), sigma.dim()) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw InvalidInputError("GaussianProxCache: rho must be > 0");
  }
  if (observations.block_dim() != dim_) {
    throw InvalidInputError("GaussianProxCache: sigma is " +
                            std::to_string(dim_) + "x" + std::to_string(dim_) +
                            " but observations have dimension " +
                            std::to_string(observations.block_dim()));
  }
  const CholeskyFactor sigma_factor = spd_factor(sigma);
  sigma_inv_ = spd_inverse(sigma_factor);

  if (diagonal_) {
    inv_system_diag_.resize(dim_);
    std::vector<double> inv_sigma(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      inv_sigma[j] = 1.0 / sigma(j, j);
      sigma_inv_.set(j, j, inv_sigma[j]);
      inv_system_diag_[j] = 1.0 / (inv_sigma[j] + rho_);
    }
    for (std::size_t i = 0; i < observations.num_blocks(); ++i) {
      auto y = observations.block(i);
      auto out = sigma_inv_y_.block(i);
      for (std::size_t j = 0; j < dim_; ++j) out[j] = inv_sigma[j] * y[j];
    }
    return;
  }

  SymMatrix system = sigma_inv_;
  for (std::size_t j = 0; j < dim_; ++j) system.set(j, j, system(j, j) + rho_);
  system_factor_ = spd_factor(system);
  for (std::size_t i = 0; i < observations.num_blocks(); ++i) {
    const std::vector<double> siy = spd_solve(sigma_factor, observations.block(i));
    std::copy(siy.begin(), siy.end(), sigma_inv_y_.block(i).begin());
  }
}

void GaussianProxCache::apply(std::size_t i, std::span<const double> vbar,
                              std::span<double> out) const {
  if (vbar.size() != dim_ || out.size() != dim_ || i >= num_blocks()) {
    throw InvalidInputError("prox_gaussian: dimension or index mismatch");
  }
  const auto siy = sigma_inv_y_.block(i);
  if (diagonal_) {
    for (std::size_t j = 0; j < dim_; ++j) {
      out[j] = inv_system_diag_[j] * (siy[j] + rho_ * vbar[j]);
    }
    return;
  }
  std::vector<double> rhs(dim_);
  for (std::size_t j = 0; j < dim_; ++j) rhs[j] = siy[j] + rho_ * vbar[j];
  const std::vector<double> x = spd_solve(*system_factor_, rhs);
  std::copy(x.begin(), x.end(), out.begin());
}

std::vector<double> prox_gaussian(const GaussianProxCache& cache, std::size_t i,
                                  std::span<const double> vbar) {
  std::vector<double> out(cache.dim());
  cache.apply(i, vbar, out);
  return out;
}

void soft_threshold_group(std::span<const double> a, double kappa,
                          std::span<double> out) {
  check_kappa(kappa);
  double norm_sq = 0.0;
  for (double v : a) norm_sq += v * v;
  const double norm = std::sqrt(norm_sq);
  const double scale = norm > kappa ? 1.0 - kappa / norm : 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = scale * a[j];
}

std::vector<double> soft_threshold_group(std::span<const double> a,
                                         double kappa) {
  std::vector<double> out(a.size());
  soft_threshold_group(a, kappa, out);
  return out;
}

void soft_threshold_scalar(std::span<const double> a, double kappa,
                           std::span<double> out) {
  check_kappa(kappa);
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double mag = std::abs(a[j]) - kappa;
    out[j] = mag > 0.0 ? std::copysign(mag, a[j]) : 0.0;
  }
}

std::vector<double> soft_threshold_scalar(std::span<const double> a,
                                          double kappa) {
  std::vector<double> out(a.size());
  soft_threshold_scalar(a, kappa, out);
  return out;
}

SymMatrix prox_neg_logdet(const SymMatrix& v, const SymMatrix& scatter,
                          double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw InvalidInputError("prox_neg_logdet: rho must be > 0");
  }
  if (scatter.dim() != v.dim()) {
    throw InvalidInputError("prox_neg_logdet: dimension mismatch");
  }
  const std::size_t n = v.dim();
  if (n == 1) {
    const double lam = rho * v(0, 0) - scatter(0, 0);
    SymMatrix x(1);
    x.set(0, 0, logdet_eigenvalue(lam, rho));
    return x;
  }
  const EigenDecomposition eig = sym_eig(rho * v - scatter);
  std::vector<double> mu(n);
  for (std::size_t j = 0; j < n; ++j) {
    mu[j] = logdet_eigenvalue(eig.eigenvalues[j], rho);
  }
  return eig.reconstruct(mu);
}

SymMatrix prox_neg_logdet(const SymMatrix& v, std::span<const double> y,
                          double rho) {
  if (y.size() != v.dim()) {
    throw InvalidInputError("prox_neg_logdet: y has length " +
                            std::to_string(y.size()) + ", expected " +
                            std::to_string(v.dim()));
  }
  return prox_neg_logdet(v, SymMatrix::outer(y), rho);
}

}  // namespace tvadmm
