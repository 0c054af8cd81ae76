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

#include <benchmark/benchmark.h>

#include <random>

#include "tvadmm/block_vector.hpp"
#include "tvadmm/projection.hpp"

namespace {

tvadmm::BlockVector random_blocks(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist;
  tvadmm::BlockVector out(n, d);
  for (double& e : out.flat()) e = dist(gen);
  return out;
}

void BM_ChainFactor(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tvadmm::chain_factor(n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ChainFactor)->RangeMultiplier(4)->Range(64, 1 << 18)->Complexity();

void BM_Project(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  const auto chol = tvadmm::chain_factor(n);
  const auto w = random_blocks(n, d, 1);
  const auto v = random_blocks(n - 1, d, 2);
  tvadmm::BlockVector z(n, d), s(n - 1, d);
  for (auto _ : state) {
    tvadmm::project(chol, w, v, z, s);
    benchmark::DoNotOptimize(z.flat().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}
BENCHMARK(BM_Project)->ArgsProduct({{1 << 10, 1 << 14, 1 << 18}, {1, 4}});

}  // namespace

BENCHMARK_MAIN();
