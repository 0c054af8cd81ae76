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

#include "cli/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>
#include <string>

#include "tvadmm/error.hpp"

namespace tvadmm::cli {

namespace {

constexpr int kMaxChangePointDraws = 100000;

}  // namespace

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::index(std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % n;
}

double Rng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  double u1;
  do {
    u1 = uniform();
  } while (u1 == 0.0);
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

SynthData generate_synthetic(const SynthConfig& config) {
  const std::size_t n = config.num_samples;
  const std::size_t k = config.segments;
  if (n == 0 || config.dim == 0) {
    throw InvalidInputError("synth: need at least one sample of dim >= 1");
  }
  if (k == 0 || k > n) {
    throw InvalidInputError("synth: segment count must be in [1, N]");
  }
  const std::size_t min_len = std::max<std::size_t>(1, n / (4 * k));
  if (k * min_len > n) {
    throw InvalidInputError("synth: " + std::to_string(k) +
                            " segments of length >= " + std::to_string(min_len) +
                            " do not fit in " + std::to_string(n) + " samples");
  }
  if (config.sigma && config.sigma->dim() != config.dim) {
    throw InvalidInputError("synth: sigma dimension mismatch");
  }

  Rng rng(config.seed);

  std::vector<std::size_t> cuts;
  if (k > 1) {
    std::vector<std::size_t> pool(n - 1);
    std::iota(pool.begin(), pool.end(), std::size_t{1});
    bool ok = false;
    for (int attempt = 0; attempt < kMaxChangePointDraws && !ok; ++attempt) {
      // Partial Fisher-Yates: the first k - 1 slots become the draw.
      for (std::size_t j = 0; j + 1 < k; ++j) {
        const std::size_t pick = j + rng.index(pool.size() - j);
        std::swap(pool[j], pool[pick]);
      }
      cuts.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k - 1));
      std::sort(cuts.begin(), cuts.end());
      ok = cuts.front() >= min_len && n - cuts.back() >= min_len;
      for (std::size_t j = 1; ok && j < cuts.size(); ++j) {
        ok = cuts[j] - cuts[j - 1] >= min_len;
      }
    }
    if (!ok) {
      throw InvalidInputError("synth: could not place change points with "
                              "minimum segment length " +
                              std::to_string(min_len));
    }
  }

  const std::size_t d = config.dim;
  std::vector<std::vector<double>> levels(k, std::vector<double>(d));
  for (auto& level : levels) {
    for (double& v : level) v = rng.uniform(config.level_min, config.level_max);
  }

  std::optional<CholeskyFactor> noise_factor;
  if (config.sigma) noise_factor = spd_factor(*config.sigma);

  SynthData out{BlockVector(n, d), BlockVector(n, d), cuts};
  std::size_t segment = 0;
  std::vector<double> z(d);
  for (std::size_t i = 0; i < n; ++i) {
    while (segment < cuts.size() && i >= cuts[segment]) ++segment;
    auto truth = out.truth.block(i);
    auto sample = out.data.block(i);
    std::copy(levels[segment].begin(), levels[segment].end(), truth.begin());
    for (double& v : z) v = rng.normal();
    for (std::size_t a = 0; a < d; ++a) {
      double noise = z[a];
      if (noise_factor) {
        noise = 0.0;
        for (std::size_t b = 0; b <= a; ++b) noise += (*noise_factor)(a, b) * z[b];
      }
      sample[a] = truth[a] + noise;
    }
  }
  return out;
}

}  // namespace tvadmm::cli
