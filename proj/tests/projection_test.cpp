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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "tvadmm/error.hpp"

namespace tvadmm {
namespace {

using testing::dense_project;
using testing::random_blocks;

double max_abs_diff(const BlockVector& a, const Eigen::VectorXd& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    worst = std::max(worst, std::abs(a.flat()[k] - b(static_cast<Eigen::Index>(k))));
  }
  return worst;
}

double max_abs_diff(const BlockVector& a, const BlockVector& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    worst = std::max(worst, std::abs(a.flat()[k] - b.flat()[k]));
  }
  return worst;
}

TEST(ChainFactorTest, TwoBlocks) {
  const auto chol = chain_factor(2);
  EXPECT_EQ(chol.diag[0], std::sqrt(2.0));
  EXPECT_NEAR(chol.diag[1], 1.22474487139158905, 1e-15);
  EXPECT_NEAR(chol.subdiag[0], -0.70710678118654752, 1e-15);
  EXPECT_NEAR(chol.inv_diag[1] * chol.diag[1], 1.0, 1e-15);
}

TEST(ChainFactorTest, ThreeBlocks) {
  const auto chol = chain_factor(3);
  EXPECT_NEAR(chol.diag[0], 1.41421356237309505, 1e-15);
  EXPECT_NEAR(chol.diag[1], 1.58113883008418967, 1e-15);
  EXPECT_NEAR(chol.diag[2], 1.26491106406735173, 1e-15);
  EXPECT_NEAR(chol.subdiag[0], -0.70710678118654752, 1e-15);
  EXPECT_NEAR(chol.subdiag[1], -0.63245553203367587, 1e-15);
}

TEST(ChainFactorTest, RejectsSingleBlock) {
  EXPECT_THROW(chain_factor(1), InvalidInputError);
  EXPECT_THROW(chain_factor(0), InvalidInputError);
}

TEST(ChainFactorTest, RecursionInvariants) {
  const auto chol = chain_factor(50);
  for (std::size_t i = 1; i + 1 < 50; ++i) {
    EXPECT_EQ(chol.subdiag[i - 1], -1.0 / chol.diag[i - 1]);
    EXPECT_EQ(chol.diag[i], std::sqrt(3.0 - chol.subdiag[i - 1] * chol.subdiag[i - 1]));
  }
  EXPECT_EQ(chol.diag[49], std::sqrt(2.0 - chol.subdiag[48] * chol.subdiag[48]));
}

TEST(ChainFactorTest, MatchesDenseCholesky) {
  for (std::size_t n = 2; n <= 200; n += (n < 20 ? 1 : 17)) {
    const auto chol = chain_factor(n);
    const Eigen::MatrixXd ref = testing::dense_chain_system(n, 1).llt().matrixL();
    // Assembled L L^T against I + D^T D.
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      l(ii, ii) = chol.diag[i];
      if (i + 1 < n) l(ii + 1, ii) = chol.subdiag[i];
      EXPECT_NEAR(chol.diag[i], ref(ii, ii), 1e-12);
    }
    const Eigen::MatrixXd a = testing::dense_chain_system(n, 1);
    EXPECT_LE((l * l.transpose() - a).cwiseAbs().maxCoeff(), 1e-12) << "N = " << n;
  }
}

TEST(ProjectTest, ZeroIsFixed) {
  const auto p = project(chain_factor(2), BlockVector(2, 1), BlockVector(1, 1));
  EXPECT_EQ(p.z.flat()[0], 0.0);
  EXPECT_EQ(p.z.flat()[1], 0.0);
  EXPECT_EQ(p.s.flat()[0], 0.0);
}

TEST(ProjectTest, FeasiblePointIsFixed) {
  const auto p = project(chain_factor(2), BlockVector::from_blocks({{1.0}, {1.0}}),
                         BlockVector(1, 1));
  EXPECT_NEAR(p.z.flat()[0], 1.0, 1e-15);
  EXPECT_NEAR(p.z.flat()[1], 1.0, 1e-15);
  EXPECT_NEAR(p.s.flat()[0], 0.0, 1e-15);
}

TEST(ProjectTest, HandSolvedExample) {
  const auto p = project(chain_factor(2), BlockVector(2, 1),
                         BlockVector::from_blocks({{1.0}}));
  EXPECT_NEAR(p.z.flat()[0], -1.0 / 3.0, 1e-15);
  EXPECT_NEAR(p.z.flat()[1], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(p.s.flat()[0], 2.0 / 3.0, 1e-15);
}

TEST(ProjectTest, ShapeMismatch) {
  const auto chol = chain_factor(3);
  EXPECT_THROW(project(chol, BlockVector(2, 1), BlockVector(1, 1)), InvalidInputError);
  EXPECT_THROW(project(chol, BlockVector(3, 1), BlockVector(3, 1)), InvalidInputError);
  EXPECT_THROW(project(chol, BlockVector(3, 2), BlockVector(2, 1)), InvalidInputError);
}

TEST(ProjectTest, SatisfiesOptimalityCondition) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial;
    const std::size_t d = 1 + trial % 4;
    const BlockVector w = random_blocks(gen, n, d);
    const BlockVector v = random_blocks(gen, n - 1, d);
    const auto p = project(chain_factor(n), w, v);
    const Eigen::MatrixXd dm = testing::dense_difference(n, d);
    const Eigen::VectorXd lhs = testing::dense_chain_system(n, d) * testing::to_eigen(p.z);
    const Eigen::VectorXd rhs = testing::to_eigen(w) + dm.transpose() * testing::to_eigen(v);
    const double tol = 1e-10 * (1.0 + w.norm_inf() + v.norm_inf());
    EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), tol);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        EXPECT_EQ(p.s.block(i)[j], p.z.block(i + 1)[j] - p.z.block(i)[j]);
      }
    }
  }
}

TEST(ProjectTest, MatchesDenseOracle) {
  std::mt19937_64 gen(22);
  std::uniform_int_distribution<std::size_t> blocks(2, 60);
  std::uniform_int_distribution<std::size_t> dims(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = blocks(gen);
    const std::size_t d = dims(gen);
    const BlockVector w = random_blocks(gen, n, d);
    const BlockVector v = random_blocks(gen, n - 1, d);
    const auto p = project(chain_factor(n), w, v);
    const auto ref = dense_project(w, v);
    EXPECT_LE(max_abs_diff(p.z, ref.z), 1e-9);
    EXPECT_LE(max_abs_diff(p.s, ref.s), 1e-9);
  }
}

TEST(ProjectTest, Idempotent) {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial;
    const auto chol = chain_factor(n);
    const auto p = project(chol, random_blocks(gen, n, 3), random_blocks(gen, n - 1, 3));
    const auto q = project(chol, p.z, p.s);
    EXPECT_LE(max_abs_diff(p.z, q.z), 1e-12);
    EXPECT_LE(max_abs_diff(p.s, q.s), 1e-12);
  }
}

TEST(ProjectTest, Linear) {
  std::mt19937_64 gen(24);
  const std::size_t n = 40, d = 2;
  const auto chol = chain_factor(n);
  for (int trial = 0; trial < 20; ++trial) {
    const BlockVector wa = random_blocks(gen, n, d), va = random_blocks(gen, n - 1, d);
    const BlockVector wb = random_blocks(gen, n, d), vb = random_blocks(gen, n - 1, d);
    const double alpha = 1.7, beta = -0.4;
    BlockVector wc(n, d), vc(n - 1, d);
    for (std::size_t k = 0; k < wc.size(); ++k) wc.flat()[k] = alpha * wa.flat()[k] + beta * wb.flat()[k];
    for (std::size_t k = 0; k < vc.size(); ++k) vc.flat()[k] = alpha * va.flat()[k] + beta * vb.flat()[k];
    const auto pa = project(chol, wa, va);
    const auto pb = project(chol, wb, vb);
    const auto pc = project(chol, wc, vc);
    for (std::size_t k = 0; k < pc.z.size(); ++k) {
      EXPECT_NEAR(pc.z.flat()[k], alpha * pa.z.flat()[k] + beta * pb.z.flat()[k], 1e-10);
    }
  }
}

TEST(ProjectTest, BeatsRandomFeasiblePoints) {
  std::mt19937_64 gen(25);
  std::normal_distribution<double> noise(0.0, 0.1);
  const std::size_t n = 30, d = 2;
  const auto chol = chain_factor(n);
  const BlockVector w = random_blocks(gen, n, d);
  const BlockVector v = random_blocks(gen, n - 1, d);
  const auto p = project(chol, w, v);
  auto distance = [&](const BlockVector& z) {
    double acc = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      acc += std::pow(z.flat()[k] - w.flat()[k], 2);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        acc += std::pow(z.block(i + 1)[j] - z.block(i)[j] - v.block(i)[j], 2);
      }
    }
    return acc;
  };
  const double best = distance(p.z);
  for (int trial = 0; trial < 100; ++trial) {
    BlockVector z = p.z;
    for (double& e : z.flat()) e += noise(gen);
    EXPECT_LE(best, distance(z));
  }
}

TEST(ProjectTest, InPlaceAliasingOfInputAndOutput) {
  std::mt19937_64 gen(26);
  const std::size_t n = 12, d = 3;
  const auto chol = chain_factor(n);
  BlockVector w = random_blocks(gen, n, d);
  BlockVector v = random_blocks(gen, n - 1, d);
  const auto ref = project(chol, w, v);
  project(chol, w, v, w, v);
  EXPECT_EQ(w, ref.z);
  EXPECT_EQ(v, ref.s);
}

}  // namespace
}  // namespace tvadmm
