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

#include "tvadmm/filters.hpp"

namespace {

tvadmm::TimeSeries step_data(std::size_t n, std::size_t d) {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> noise;
  tvadmm::BlockVector out(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    const double level = static_cast<double>((i * 5) / n) * 2.0;
    for (double& e : out.block(i)) e = level + noise(gen);
  }
  return tvadmm::TimeSeries(out);
}

// Fixed iteration count so the time per iteration is comparable across N.
void BM_MeanFilterIterations(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto data = step_data(n, 1);
  tvadmm::MeanFilterSpec spec;
  spec.lambda = 5.0;
  tvadmm::SolverConfig config;
  config.eps_abs = config.eps_rel = 1e-300;
  config.max_iter = 20;
  config.record_objective = false;
  config.threads = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tvadmm::mean_filter(data, spec, config).estimates);
  }
  state.SetItemsProcessed(state.iterations() * config.max_iter);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MeanFilterIterations)
    ->ArgsProduct({{25000, 50000, 100000, 200000}, {1}})
    ->Unit(benchmark::kMillisecond);

void BM_MeanFilterSolve(benchmark::State& state) {
  const auto data = step_data(400, 1);
  const double lmax =
      tvadmm::lambda_max_mean(data, tvadmm::SymMatrix::identity(1), tvadmm::Penalty::kGroup);
  tvadmm::MeanFilterSpec spec;
  spec.lambda = 0.1 * lmax;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tvadmm::mean_filter(data, spec, tvadmm::SolverConfig{}));
  }
}
BENCHMARK(BM_MeanFilterSolve)->Unit(benchmark::kMillisecond);

void BM_VarianceFilterSolve(benchmark::State& state) {
  const auto data = step_data(400, static_cast<std::size_t>(state.range(0)));
  tvadmm::VarianceFilterSpec spec;
  spec.lambda = 5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tvadmm::variance_filter(data, spec, tvadmm::SolverConfig{}));
  }
}
BENCHMARK(BM_VarianceFilterSolve)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
