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

#ifndef TVADMM_BLOCK_VECTOR_HPP_
#define TVADMM_BLOCK_VECTOR_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace tvadmm {

// An ordered sequence of equal-length real blocks stored contiguously.
// Matrix-valued blocks are stored flattened in row-major order.
class BlockVector {
 public:
  BlockVector() = default;
  // num_blocks x block_dim zeros. Both must be >= 1.
  BlockVector(std::size_t num_blocks, std::size_t block_dim);
  // Throws InvalidInputError on ragged, empty or non-finite input.
  static BlockVector from_blocks(const std::vector<std::vector<double>>& blocks);
  static BlockVector from_flat(std::size_t block_dim, std::vector<double> flat);

  std::size_t num_blocks() const noexcept { return num_blocks_; }
  std::size_t block_dim() const noexcept { return block_dim_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::span<double> block(std::size_t i) noexcept {
    return {data_.data() + i * block_dim_, block_dim_};
  }
  std::span<const double> block(std::size_t i) const noexcept {
    return {data_.data() + i * block_dim_, block_dim_};
  }

  std::span<double> flat() noexcept { return data_; }
  std::span<const double> flat() const noexcept { return data_; }

  std::vector<std::vector<double>> to_blocks() const;

  bool all_finite() const;
  double norm2() const;
  double norm_inf() const;

  void fill(double value);

  friend bool operator==(const BlockVector&, const BlockVector&) = default;

 private:
  std::size_t num_blocks_ = 0;
  std::size_t block_dim_ = 0;
  std::vector<double> data_;
};

}  // namespace tvadmm

#endif  // TVADMM_BLOCK_VECTOR_HPP_
