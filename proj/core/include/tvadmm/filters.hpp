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

#ifndef TVADMM_FILTERS_HPP_
#define TVADMM_FILTERS_HPP_

// l1 mean filtering and l1 variance filtering built on the chain ADMM
// engine, plus the helpers used to pick lambda and read off segments.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tvadmm/admm.hpp"
#include "tvadmm/block_vector.hpp"
#include "tvadmm/linalg.hpp"

namespace tvadmm {

// N observations of dimension n, one block per time step.
class TimeSeries {
 public:
  explicit TimeSeries(BlockVector samples);
  static TimeSeries from_rows(const std::vector<std::vector<double>>& rows) {
    return TimeSeries(BlockVector::from_blocks(rows));
  }

  std::size_t num_samples() const noexcept { return samples_.num_blocks(); }
  std::size_t dim() const noexcept { return samples_.block_dim(); }
  std::span<const double> sample(std::size_t i) const { return samples_.block(i); }
  const BlockVector& samples() const noexcept { return samples_; }

 private:
  BlockVector samples_;
};

// Penalty on consecutive differences: kGroup is the l2 norm of the
// difference (Frobenius norm for matrix blocks), kElementwise the l1 norm.
enum class Penalty { kGroup, kElementwise };

struct MeanFilterSpec {
  double lambda = 0.0;
  Penalty penalty = Penalty::kGroup;
  SymMatrix sigma = SymMatrix::identity(1);
};

struct VarianceFilterSpec {
  double lambda = 0.0;
  Penalty penalty = Penalty::kGroup;
  // Number of outer products averaged per time step (centred window). 1
  // uses each sample's rank-one outer product on its own.
  std::size_t window = 1;
};

struct MeanFilterResult {
  BlockVector estimates;
  SolverReport report;
};

struct VarianceEstimate {
  std::vector<SymMatrix> precision;   // X_i
  std::vector<SymMatrix> covariance;  // X_i^{-1}
};

struct VarianceFilterResult {
  VarianceEstimate estimate;
  SolverReport report;
};

// lambda when positive, otherwise 1.
double default_rho(double lambda);

// sum_i 1/2 (y_i - x_i)^T Sigma^{-1} (y_i - x_i) + lambda sum_i pen(x_{i+1} - x_i)
double mean_filter_objective(const TimeSeries& data, const MeanFilterSpec& spec,
                             const BlockVector& x);

ChainProblem make_mean_filter_problem(const TimeSeries& data,
                                      const MeanFilterSpec& spec, double rho);

MeanFilterResult mean_filter(const TimeSeries& data, const MeanFilterSpec& spec,
                             SolverConfig config,
                             const std::optional<WarmStart>& initial = std::nullopt);

// Per-step scatter matrices: the average of y_j y_j^T over a centred window
// of the given length, truncated at the ends.
std::vector<SymMatrix> scatter_matrices(const TimeSeries& data,
                                        std::size_t window);

// sum_i Tr(X_i S_i) - log det X_i + lambda sum_i pen(X_{i+1} - X_i) over
// flattened blocks; +inf if some X_i is not positive definite.
double variance_filter_objective(const std::vector<SymMatrix>& scatter,
                                 const VarianceFilterSpec& spec,
                                 const BlockVector& x);

ChainProblem make_variance_filter_problem(const TimeSeries& data,
                                          const VarianceFilterSpec& spec);

// Throws UnboundedProblemError when the objective has no minimizer: with
// lambda = 0 every scatter matrix must be positive definite, otherwise
// their sum must be.
VarianceFilterResult variance_filter(const TimeSeries& data,
                                     const VarianceFilterSpec& spec,
                                     SolverConfig config);

// Smallest lambda for which the mean filter returns a constant sequence.
// With P_k = sum_{j<=k} Sigma^{-1} (y_j - mean(y)), this is max_k ||P_k||_2
// for kGroup and max_k ||P_k||_inf for kElementwise. Requires N >= 2.
double lambda_max_mean(const TimeSeries& data, const SymMatrix& sigma,
                       Penalty penalty);

// Variance-filter analogue: smallest lambda for which the estimate is a
// constant precision matrix. With S the scatter matrices, mean(S) must be
// positive definite and P_k = sum_{j<=k} (S_j - mean(S)); the value is
// max_k ||P_k||_F for kGroup and max_k max|P_k| for kElementwise.
double lambda_max_variance(const TimeSeries& data, Penalty penalty,
                           std::size_t window = 1);

// Maximal run of blocks, 1-based inclusive indices, with its mean level.
struct Segment {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<double> level;
};

// Splits wherever consecutive blocks differ by more than tol in the infinity
// norm. tol must be > 0.
std::vector<Segment> segments(const BlockVector& estimates, double tol);

// 1e-3 times the largest per-component spread of the estimates (or a tiny
// positive value for a constant sequence).
double default_segment_tolerance(const BlockVector& estimates);

}  // namespace tvadmm

#endif  // TVADMM_FILTERS_HPP_
