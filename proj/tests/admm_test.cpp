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

#include "tvadmm/admm.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "support/oracles.hpp"
#include "tvadmm/error.hpp"
#include "tvadmm/filters.hpp"

namespace tvadmm {
namespace {

using testing::plain_admm_mean_filter;
using testing::random_blocks;
using testing::to_eigen;

MeanFilterSpec scalar_spec(double lambda) {
  MeanFilterSpec spec;
  spec.lambda = lambda;
  return spec;
}

TEST(AdmmExamplesTest, SingleBlockReturnsObservation) {
  const auto data = TimeSeries::from_rows({{1.5, -2.0}});
  MeanFilterSpec spec;
  spec.lambda = 3.0;
  spec.sigma = SymMatrix::identity(2);
  const auto result = mean_filter(data, spec, SolverConfig{});
  EXPECT_TRUE(result.report.converged);
  EXPECT_NEAR(result.estimates.block(0)[0], 1.5, 1e-3);
  EXPECT_NEAR(result.estimates.block(0)[1], -2.0, 1e-3);
  EXPECT_TRUE(result.report.r_star.empty());
}

TEST(AdmmExamplesTest, TwoPointInteriorKink) {
  const auto data = TimeSeries::from_rows({{0.0}, {2.0}});
  SolverConfig config;
  config.rho = 1.0;
  const auto result = mean_filter(data, scalar_spec(0.5), config);
  EXPECT_TRUE(result.report.converged);
  EXPECT_NEAR(result.estimates.block(0)[0], 0.5, 1e-3);
  EXPECT_NEAR(result.estimates.block(1)[0], 1.5, 1e-3);
}

TEST(AdmmExamplesTest, TwoPointFusedAtMean) {
  const auto data = TimeSeries::from_rows({{0.0}, {2.0}});
  const auto result = mean_filter(data, scalar_spec(2.0), SolverConfig{});
  EXPECT_TRUE(result.report.converged);
  EXPECT_NEAR(result.estimates.block(0)[0], 1.0, 1e-3);
  EXPECT_NEAR(result.estimates.block(1)[0], 1.0, 1e-3);
}

AdmmState two_block_state() {
  AdmmState st;
  st.x = BlockVector::from_blocks({{0.3}, {0.4}});
  st.z = BlockVector(2, 1);
  st.u = BlockVector(2, 1);
  st.r = BlockVector::from_blocks({{0.0}});
  st.s = BlockVector(1, 1);
  st.t = BlockVector(1, 1);
  return st;
}

TEST(ResidualsTest, ZeroWhenFeasibleAndStationary) {
  AdmmState st = two_block_state();
  st.x = st.z;
  const auto res = residuals(st, st.z, st.s, 1.0, 1e-4, 1e-3);
  EXPECT_EQ(res.primal, 0.0);
  EXPECT_EQ(res.dual, 0.0);
  EXPECT_GT(res.eps_pri, 0.0);
  EXPECT_GT(res.eps_dual, 0.0);
  EXPECT_DOUBLE_EQ(res.eps_pri, std::sqrt(3.0) * 1e-4);
  EXPECT_TRUE(res.converged());
}

TEST(ResidualsTest, PrimalIsStackedNorm) {
  const AdmmState st = two_block_state();
  const auto res = residuals(st, st.z, st.s, 1.0, 1e-4, 1e-3);
  EXPECT_DOUBLE_EQ(res.primal, 0.5);
  EXPECT_DOUBLE_EQ(res.eps_pri, std::sqrt(3.0) * 1e-4 + 1e-3 * 0.5);
}

TEST(ResidualsTest, DualScalesWithRho) {
  AdmmState st = two_block_state();
  st.x = st.z;
  st.u = BlockVector::from_blocks({{3.0}, {0.0}});
  st.t = BlockVector::from_blocks({{4.0}});
  const auto z_prev = BlockVector::from_blocks({{-0.1}, {0.0}});
  const auto res = residuals(st, z_prev, st.s, 2.0, 1e-4, 1e-3);
  EXPECT_NEAR(res.dual, 0.2, 1e-15);
  EXPECT_DOUBLE_EQ(res.eps_dual, std::sqrt(3.0) * 1e-4 + 1e-3 * 2.0 * 5.0);
}

TEST(OverRelaxTest, Blend) {
  const auto fresh = BlockVector::from_blocks({{1.0}, {2.0}});
  const auto prev = BlockVector::from_blocks({{3.0}, {-1.0}});
  BlockVector out(2, 1);
  over_relax(1.5, fresh, prev, out);
  EXPECT_DOUBLE_EQ(out.block(0)[0], 0.0);
  EXPECT_DOUBLE_EQ(out.block(1)[0], 3.5);
  over_relax(1.0, fresh, prev, out);
  EXPECT_EQ(out, fresh);
}

TEST(SolverConfigTest, Validation) {
  SolverConfig ok;
  EXPECT_NO_THROW(ok.validate());
  auto bad = [](auto mutate) {
    SolverConfig c;
    mutate(c);
    return c;
  };
  EXPECT_THROW(bad([](SolverConfig& c) { c.alpha = 2.0; }).validate(), InvalidInputError);
  EXPECT_THROW(bad([](SolverConfig& c) { c.alpha = 0.9; }).validate(), InvalidInputError);
  EXPECT_THROW(bad([](SolverConfig& c) { c.rho = 0.0; }).validate(), InvalidInputError);
  EXPECT_THROW(bad([](SolverConfig& c) { c.eps_abs = 0.0; }).validate(), InvalidInputError);
  EXPECT_THROW(bad([](SolverConfig& c) { c.eps_rel = -1.0; }).validate(), InvalidInputError);
  EXPECT_THROW(bad([](SolverConfig& c) { c.max_iter = 0; }).validate(), InvalidInputError);
  EXPECT_THROW(bad([](SolverConfig& c) { c.threads = 0; }).validate(), InvalidInputError);
}

TEST(AdmmSolverTest, PlainAdmmMatchesOracleStepForStep) {
  std::mt19937_64 gen(41);
  for (std::size_t d : {1u, 3u}) {
    const TimeSeries data(random_blocks(gen, 30, d));
    MeanFilterSpec spec;
    spec.lambda = 0.4;
    spec.sigma = d == 1 ? SymMatrix::identity(1) : testing::random_spd(gen, d);
    const double rho = 0.7;
    SolverConfig config;
    config.alpha = 1.0;
    config.rho = rho;
    AdmmSolver solver(make_mean_filter_problem(data, spec, rho), config);
    const auto oracle = plain_admm_mean_filter(data, spec.sigma, spec.lambda, rho, 50);
    for (int k = 0; k < 50; ++k) {
      solver.step();
      const auto& st = solver.state();
      const auto& ref = oracle[static_cast<std::size_t>(k)];
      EXPECT_LE((to_eigen(st.x) - ref.x).cwiseAbs().maxCoeff(), 1e-12) << k;
      EXPECT_LE((to_eigen(st.r) - ref.r).cwiseAbs().maxCoeff(), 1e-12) << k;
      EXPECT_LE((to_eigen(st.z) - ref.z).cwiseAbs().maxCoeff(), 1e-12) << k;
      EXPECT_LE((to_eigen(st.s) - ref.s).cwiseAbs().maxCoeff(), 1e-12) << k;
      EXPECT_LE((to_eigen(st.u) - ref.u).cwiseAbs().maxCoeff(), 1e-12) << k;
      EXPECT_LE((to_eigen(st.t) - ref.t).cwiseAbs().maxCoeff(), 1e-12) << k;
    }
  }
}

TEST(AdmmSolverTest, ReportInvariants) {
  std::mt19937_64 gen(42);
  const TimeSeries data(random_blocks(gen, 60, 2));
  MeanFilterSpec spec;
  spec.lambda = 0.5;
  spec.sigma = SymMatrix::identity(2);
  const auto result = mean_filter(data, spec, SolverConfig{});
  const auto& rep = result.report;
  ASSERT_TRUE(rep.converged);
  EXPECT_EQ(rep.history.size(), static_cast<std::size_t>(rep.iterations));
  EXPECT_EQ(rep.objective_trace.size(), static_cast<std::size_t>(rep.iterations));
  EXPECT_EQ(rep.history.back().iter, rep.iterations);
  EXPECT_TRUE(rep.history.back().residuals.converged());
  // r_star is D x_star exactly.
  for (std::size_t i = 0; i + 1 < rep.x_star.num_blocks(); ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_EQ(rep.r_star.block(i)[j], rep.x_star.block(i + 1)[j] - rep.x_star.block(i)[j]);
    }
  }
  EXPECT_EQ(rep.x_star, rep.final_state.z);
}

TEST(AdmmSolverTest, ObjectiveNearTightReference) {
  std::mt19937_64 gen(43);
  const TimeSeries data(random_blocks(gen, 80, 1));
  const auto spec = scalar_spec(0.3);
  SolverConfig tight;
  tight.eps_abs = tight.eps_rel = 1e-10;
  tight.max_iter = 200000;
  const auto ref = mean_filter(data, spec, tight);
  ASSERT_TRUE(ref.report.converged);
  SolverConfig config;
  config.eps_abs = config.eps_rel = 1e-6;
  const auto got = mean_filter(data, spec, config);
  ASSERT_TRUE(got.report.converged);
  const double p_ref = mean_filter_objective(data, spec, ref.estimates);
  const double p = mean_filter_objective(data, spec, got.estimates);
  EXPECT_LE(std::abs(p - p_ref), 1e-3 * std::abs(p_ref));
}

TEST(AdmmSolverTest, WarmStartConvergesImmediately) {
  std::mt19937_64 gen(44);
  const TimeSeries data(random_blocks(gen, 50, 2));
  MeanFilterSpec spec;
  spec.lambda = 0.2;
  spec.sigma = SymMatrix::identity(2);
  const auto first = mean_filter(data, spec, SolverConfig{});
  ASSERT_TRUE(first.report.converged);
  const auto second = mean_filter(data, spec, SolverConfig{}, first.report.warm_start());
  EXPECT_TRUE(second.report.converged);
  EXPECT_LE(second.report.iterations, 2);
}

TEST(AdmmSolverTest, DeterministicSequential) {
  std::mt19937_64 gen(45);
  const TimeSeries data(random_blocks(gen, 40, 2));
  MeanFilterSpec spec;
  spec.lambda = 0.3;
  spec.sigma = SymMatrix::identity(2);
  const auto a = mean_filter(data, spec, SolverConfig{});
  const auto b = mean_filter(data, spec, SolverConfig{});
  EXPECT_EQ(a.report.iterations, b.report.iterations);
  EXPECT_EQ(a.estimates, b.estimates);
  EXPECT_EQ(a.report.final_state.u, b.report.final_state.u);
  EXPECT_EQ(a.report.final_state.t, b.report.final_state.t);
}

TEST(AdmmSolverTest, ThreadedMatchesSequential) {
  std::mt19937_64 gen(46);
  const TimeSeries data(random_blocks(gen, 101, 3));
  MeanFilterSpec spec;
  spec.lambda = 0.3;
  spec.sigma = SymMatrix::identity(3);
  const auto seq = mean_filter(data, spec, SolverConfig{});
  SolverConfig par;
  par.threads = 4;
  const auto threaded = mean_filter(data, spec, par);
  // Block-separable work is independent per block, so the result is exact.
  EXPECT_EQ(seq.report.iterations, threaded.report.iterations);
  EXPECT_EQ(seq.estimates, threaded.estimates);
}

TEST(AdmmSolverTest, NonConvergenceIsReported) {
  std::mt19937_64 gen(47);
  const TimeSeries data(random_blocks(gen, 50, 1));
  SolverConfig config;
  config.max_iter = 3;
  const auto result = mean_filter(data, scalar_spec(0.2), config);
  EXPECT_FALSE(result.report.converged);
  EXPECT_EQ(result.report.iterations, 3);
  EXPECT_EQ(result.report.history.size(), 3u);
}

TEST(AdmmSolverTest, NonFiniteProxIsNumericalError) {
  ChainProblem problem;
  problem.num_blocks = 3;
  problem.block_dim = 1;
  problem.phi_prox = [](std::size_t i, std::span<const double>, double,
                        std::span<double> out) {
    out[0] = i == 1 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
  };
  problem.psi_prox = [](std::size_t, std::span<const double> vbar, double,
                        std::span<double> out) { out[0] = vbar[0]; };
  EXPECT_THROW(solve(problem, SolverConfig{}), NumericalError);
}

TEST(AdmmSolverTest, DivergenceGuard) {
  // Unbounded linear objective: Phi(x) = -x.
  ChainProblem problem;
  problem.num_blocks = 2;
  problem.block_dim = 1;
  problem.phi_prox = [](std::size_t, std::span<const double> vbar, double rho,
                        std::span<double> out) { out[0] = vbar[0] + 1.0 / rho; };
  problem.psi_prox = [](std::size_t, std::span<const double> vbar, double,
                        std::span<double> out) { out[0] = vbar[0]; };
  problem.objective = [](const BlockVector& x, const BlockVector&) {
    return -(x.block(0)[0] + x.block(1)[0]);
  };
  SolverConfig config;
  config.rho = 1e-3;
  config.divergence_floor = 1e4;
  EXPECT_THROW(solve(problem, config), UnboundedProblemError);
}

TEST(AdmmSolverTest, RejectsMalformedProblem) {
  ChainProblem problem;
  problem.num_blocks = 0;
  problem.block_dim = 1;
  EXPECT_THROW(solve(problem, SolverConfig{}), InvalidInputError);
}

}  // namespace
}  // namespace tvadmm
