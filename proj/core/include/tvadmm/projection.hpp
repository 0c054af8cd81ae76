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

#ifndef TVADMM_PROJECTION_HPP_
#define TVADMM_PROJECTION_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "tvadmm/block_vector.hpp"

namespace tvadmm {

// Cholesky coefficients of the N x N tridiagonal matrix I + D^T D, where D is
// the forward difference operator. The block-level factor is this matrix
// Kronecker the d x d identity, so one set of coefficients serves every block
// dimension.
struct ChainCholesky {
  std::size_t num_blocks = 0;
  std::vector<double> diag;      // l_{i,i}, length N
  std::vector<double> subdiag;   // l_{i+1,i}, length N - 1
  std::vector<double> inv_diag;  // 1 / l_{i,i}
};

// Requires N >= 2.
ChainCholesky chain_factor(std::size_t num_blocks);

// Euclidean projection of (w, v) onto {(z, s) : s_i = z_{i+1} - z_i}.
// Solves (I + D^T D) z = w + D^T v with two banded sweeps, then sets s = D z.
// z and s must already have the right shape. Work is linear in N * d; no
// divisions are performed.
void project(const ChainCholesky& chol, const BlockVector& w,
             const BlockVector& v, BlockVector& z, BlockVector& s);

struct Projection {
  BlockVector z;
  BlockVector s;
};

Projection project(const ChainCholesky& chol, const BlockVector& w,
                   const BlockVector& v);

}  // namespace tvadmm

#endif  // TVADMM_PROJECTION_HPP_
