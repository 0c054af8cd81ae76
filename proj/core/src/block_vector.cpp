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

#include "tvadmm/block_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tvadmm/error.hpp"

namespace tvadmm {

BlockVector::BlockVector(std::size_t num_blocks, std::size_t block_dim)
    : num_blocks_(num_blocks),
      block_dim_(block_dim),
      data_(num_blocks * block_dim, 0.0) {
  if (num_blocks == 0 || block_dim == 0) {
    throw InvalidInputError("BlockVector: need at least one block of dim >= 1");
  }
}

BlockVector BlockVector::from_blocks(
    const std::vector<std::vector<double>>& blocks) {
  if (blocks.empty()) throw InvalidInputError("BlockVector: no blocks");
  BlockVector out(blocks.size(), blocks.front().size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].size() != out.block_dim_) {
      throw InvalidInputError("BlockVector: block " + std::to_string(i) +
                              " has length " + std::to_string(blocks[i].size()) +
                              ", expected " + std::to_string(out.block_dim_));
    }
    std::copy(blocks[i].begin(), blocks[i].end(), out.block(i).begin());
  }
  if (!out.all_finite()) throw InvalidInputError("BlockVector: non-finite entry");
  return out;
}

BlockVector BlockVector::from_flat(std::size_t block_dim,
                                   std::vector<double> flat) {
  if (block_dim == 0 || flat.empty() || flat.size() % block_dim != 0) {
    throw InvalidInputError("BlockVector: flat length " +
                            std::to_string(flat.size()) +
                            " is not a positive multiple of " +
                            std::to_string(block_dim));
  }
  BlockVector out;
  out.num_blocks_ = flat.size() / block_dim;
  out.block_dim_ = block_dim;
  out.data_ = std::move(flat);
  if (!out.all_finite()) throw InvalidInputError("BlockVector: non-finite entry");
  return out;
}

std::vector<std::vector<double>> BlockVector::to_blocks() const {
  std::vector<std::vector<double>> out;
  out.reserve(num_blocks_);
  for (std::size_t i = 0; i < num_blocks_; ++i) {
    auto b = block(i);
    out.emplace_back(b.begin(), b.end());
  }
  return out;
}

bool BlockVector::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

double BlockVector::norm2() const {
  double sum = 0.0;
  for (double v : data_) sum += v * v;
  return std::sqrt(sum);
}

double BlockVector::norm_inf() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

void BlockVector::fill(double value) {
  std::fill(data_.begin(), data_.end(), value);
}

}  // namespace tvadmm
