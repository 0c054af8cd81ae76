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

#include "tvadmm/projection.hpp"

#include <cmath>
#include <string>

#include "tvadmm/error.hpp"

namespace tvadmm {

ChainCholesky chain_factor(std::size_t num_blocks) {
  if (num_blocks < 2) {
    throw InvalidInputError("chain_factor: need N >= 2 blocks, got " +
                            std::to_string(num_blocks));
  }
  const std::size_t n = num_blocks;
  ChainCholesky chol;
  chol.num_blocks = n;
  chol.diag.resize(n);
  chol.subdiag.resize(n - 1);
  chol.inv_diag.resize(n);

  chol.diag[0] = std::sqrt(2.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    chol.subdiag[i - 1] = -1.0 / chol.diag[i - 1];
    chol.diag[i] = std::sqrt(3.0 - chol.subdiag[i - 1] * chol.subdiag[i - 1]);
  }
  chol.subdiag[n - 2] = -1.0 / chol.diag[n - 2];
  chol.diag[n - 1] = std::sqrt(2.0 - chol.subdiag[n - 2] * chol.subdiag[n - 2]);

  for (std::size_t i = 0; i < n; ++i) chol.inv_diag[i] = 1.0 / chol.diag[i];
  return chol;
}

void project(const ChainCholesky& chol, const BlockVector& w,
             const BlockVector& v, BlockVector& z, BlockVector& s) {
  const std::size_t n = chol.num_blocks;
  const std::size_t d = w.block_dim();
  if (w.num_blocks() != n || v.num_blocks() + 1 != n || z.num_blocks() != n ||
      s.num_blocks() + 1 != n) {
    throw InvalidInputError("project: block counts do not match N = " +
                            std::to_string(n));
  }
  if (v.block_dim() != d || z.block_dim() != d || s.block_dim() != d) {
    throw InvalidInputError("project: block dimensions differ");
  }

  const double* wp = w.flat().data();
  const double* vp = v.flat().data();
  double* zp = z.flat().data();
  double* sp = s.flat().data();
  const double* inv = chol.inv_diag.data();
  const double* sub = chol.subdiag.data();

  // Forward sweep L y = w + D^T v; y is staged in z.
  for (std::size_t j = 0; j < d; ++j) zp[j] = inv[0] * (wp[j] - vp[j]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double li = sub[i - 1];
    const double* wi = wp + i * d;
    const double* vprev = vp + (i - 1) * d;
    const double* vi = vp + i * d;
    const double* yprev = zp + (i - 1) * d;
    double* yi = zp + i * d;
    for (std::size_t j = 0; j < d; ++j) {
      yi[j] = inv[i] * (wi[j] + (vprev[j] - vi[j]) - li * yprev[j]);
    }
  }
  {
    const std::size_t i = n - 1;
    const double* wi = wp + i * d;
    const double* vprev = vp + (i - 1) * d;
    const double* yprev = zp + (i - 1) * d;
    double* yi = zp + i * d;
    for (std::size_t j = 0; j < d; ++j) {
      yi[j] = inv[i] * (wi[j] + vprev[j] - sub[i - 1] * yprev[j]);
    }
  }

  // Backward sweep L^T z = y.
  {
    double* zn = zp + (n - 1) * d;
    for (std::size_t j = 0; j < d; ++j) zn[j] = inv[n - 1] * zn[j];
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    const double li = sub[i];
    const double* znext = zp + (i + 1) * d;
    double* zi = zp + i * d;
    for (std::size_t j = 0; j < d; ++j) zi[j] = inv[i] * (zi[j] - li * znext[j]);
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double* zi = zp + i * d;
    const double* znext = zi + d;
    double* si = sp + i * d;
    for (std::size_t j = 0; j < d; ++j) si[j] = znext[j] - zi[j];
  }
}

Projection project(const ChainCholesky& chol, const BlockVector& w,
                   const BlockVector& v) {
  if (w.num_blocks() != chol.num_blocks || chol.num_blocks < 2) {
    throw InvalidInputError("project: w has " + std::to_string(w.num_blocks()) +
                            " blocks, expected " +
                            std::to_string(chol.num_blocks));
  }
  Projection out{BlockVector(chol.num_blocks, w.block_dim()),
                 BlockVector(chol.num_blocks - 1, w.block_dim())};
  project(chol, w, v, out.z, out.s);
  return out;
}

}  // namespace tvadmm
