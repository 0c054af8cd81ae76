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

#ifndef TVADMM_TOOLS_CLI_SYNTH_HPP_
#define TVADMM_TOOLS_CLI_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tvadmm/block_vector.hpp"
#include "tvadmm/linalg.hpp"

namespace tvadmm::cli {

// Portable random stream. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; the distributions below are written
// out explicitly because the standard library's are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform on {0, ..., n - 1}; n >= 1. Rejection sampling, no modulo bias.
  std::uint64_t index(std::uint64_t n);
  // Standard normal via the Box-Muller transform.
  double normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

struct SynthConfig {
  std::uint64_t seed = 0;
  std::size_t num_samples = 400;
  std::size_t dim = 1;
  std::size_t segments = 5;
  double level_min = -5.0;
  double level_max = 5.0;
  // Noise covariance; identity when absent.
  std::optional<SymMatrix> sigma;
};

struct SynthData {
  BlockVector data;
  BlockVector truth;
  // Zero-based index of the first sample of every segment after the first.
  std::vector<std::size_t> change_points;
};

// Piecewise-constant means plus Gaussian noise. Change points are drawn
// uniformly without replacement from {1, ..., N - 1}, redrawn until every
// segment has at least max(1, floor(N / (4K))) samples; segment levels are
// i.i.d. uniform per component. Throws InvalidInputError when the segment
// constraints cannot be met.
SynthData generate_synthetic(const SynthConfig& config);

}  // namespace tvadmm::cli

#endif  // TVADMM_TOOLS_CLI_SYNTH_HPP_
