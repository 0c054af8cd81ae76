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

#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace tvadmm::testing {

Eigen::MatrixXd dense_difference(std::size_t num_blocks, std::size_t block_dim) {
  const auto n = static_cast<Eigen::Index>(num_blocks);
  const auto d = static_cast<Eigen::Index>(block_dim);
  Eigen::MatrixXd dm = Eigen::MatrixXd::Zero((n - 1) * d, n * d);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      dm(i * d + j, i * d + j) = -1.0;
      dm(i * d + j, (i + 1) * d + j) = 1.0;
    }
  }
  return dm;
}

Eigen::MatrixXd dense_chain_system(std::size_t num_blocks, std::size_t block_dim) {
  const Eigen::MatrixXd dm = dense_difference(num_blocks, block_dim);
  const auto size = static_cast<Eigen::Index>(num_blocks * block_dim);
  return Eigen::MatrixXd::Identity(size, size) + dm.transpose() * dm;
}

Eigen::VectorXd to_eigen(const BlockVector& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) out(static_cast<Eigen::Index>(k)) = v.flat()[k];
  return out;
}

Eigen::MatrixXd to_eigen(const SymMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return out;
}

BlockVector to_blocks(const Eigen::VectorXd& v, std::size_t block_dim) {
  std::vector<double> flat(v.data(), v.data() + v.size());
  return BlockVector::from_flat(block_dim, std::move(flat));
}

DenseProjection dense_project(const BlockVector& w, const BlockVector& v) {
  const std::size_t n = w.num_blocks();
  const std::size_t d = w.block_dim();
  const Eigen::MatrixXd dm = dense_difference(n, d);
  const Eigen::MatrixXd system = dense_chain_system(n, d);
  const Eigen::VectorXd rhs = to_eigen(w) + dm.transpose() * to_eigen(v);
  DenseProjection out;
  out.z = system.ldlt().solve(rhs);
  out.s = dm * out.z;
  return out;
}

std::vector<PlainAdmmIterate> plain_admm_mean_filter(const TimeSeries& data,
                                                     const SymMatrix& sigma,
                                                     double lambda, double rho,
                                                     int iterations) {
  const std::size_t n = data.num_samples();
  const auto d = static_cast<Eigen::Index>(data.dim());
  const Eigen::MatrixXd sigma_inv = to_eigen(sigma).inverse();
  const Eigen::MatrixXd system =
      sigma_inv + rho * Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd dm = dense_difference(n, data.dim());
  const Eigen::MatrixXd chain = dense_chain_system(n, data.dim());
  const Eigen::VectorXd y = to_eigen(data.samples());

  PlainAdmmIterate it;
  const auto nx = static_cast<Eigen::Index>(n) * d;
  const auto nr = static_cast<Eigen::Index>(n - 1) * d;
  it.x = it.z = it.u = Eigen::VectorXd::Zero(nx);
  it.r = it.s = it.t = Eigen::VectorXd::Zero(nr);

  std::vector<PlainAdmmIterate> history;
  for (int k = 0; k < iterations; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto off = static_cast<Eigen::Index>(i) * d;
      const Eigen::VectorXd rhs = sigma_inv * y.segment(off, d) +
                                  rho * (it.z.segment(off, d) - it.u.segment(off, d));
      it.x.segment(off, d) = system.ldlt().solve(rhs);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const auto off = static_cast<Eigen::Index>(i) * d;
      const Eigen::VectorXd a = it.s.segment(off, d) - it.t.segment(off, d);
      const double norm = a.norm();
      const double kappa = lambda / rho;
      it.r.segment(off, d) = norm > kappa ? ((1.0 - kappa / norm) * a).eval()
                                          : Eigen::VectorXd::Zero(d);
    }
    const Eigen::VectorXd w = it.x + it.u;
    const Eigen::VectorXd v = it.r + it.t;
    it.z = chain.ldlt().solve(w + dm.transpose() * v);
    it.s = dm * it.z;
    it.u = it.u + (it.x - it.z);
    it.t = it.t + (it.r - it.s);
    history.push_back(it);
  }
  return history;
}

double block_spread(const BlockVector& x) {
  double spread = 0.0;
  for (std::size_t j = 0; j < x.block_dim(); ++j) {
    double lo = x.block(0)[j];
    double hi = lo;
    for (std::size_t i = 1; i < x.num_blocks(); ++i) {
      lo = std::min(lo, x.block(i)[j]);
      hi = std::max(hi, x.block(i)[j]);
    }
    spread = std::max(spread, hi - lo);
  }
  return spread;
}

double bisection_lambda_max(const TimeSeries& data, const SymMatrix& sigma,
                            Penalty penalty, double rel_tol) {
  SolverConfig config;
  config.eps_abs = 1e-9;
  config.eps_rel = 1e-9;
  config.max_iter = 200000;
  config.record_objective = false;
  const double scale = std::max(1.0, data.samples().norm_inf());
  auto constant = [&](double lambda) {
    MeanFilterSpec spec{lambda, penalty, sigma};
    const auto result = mean_filter(data, spec, config);
    return block_spread(result.estimates) <= 1e-6 * scale;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (!constant(hi)) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (constant(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> random_vector(std::mt19937_64& gen, std::size_t n,
                                  double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out(n);
  for (double& v : out) v = dist(gen);
  return out;
}

BlockVector random_blocks(std::mt19937_64& gen, std::size_t num_blocks,
                          std::size_t block_dim) {
  std::normal_distribution<double> dist;
  BlockVector out(num_blocks, block_dim);
  for (double& v : out.flat()) v = dist(gen);
  return out;
}

SymMatrix random_spd(std::mt19937_64& gen, std::size_t n) {
  const std::vector<double> m = random_vector(gen, n * n);
  SymMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double acc = i == j ? 1.0 : 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += m[k * n + i] * m[k * n + j];
      out.set(i, j, acc);
    }
  }
  return out;
}

SymMatrix random_symmetric(std::mt19937_64& gen, std::size_t n) {
  SymMatrix out(n);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) out.set(i, j, dist(gen));
  }
  return out;
}

}  // namespace tvadmm::testing
