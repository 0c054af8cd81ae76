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

#include "tvadmm/filters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "tvadmm/error.hpp"
#include "tvadmm/prox.hpp"

namespace tvadmm {

namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidInputError("lambda must be finite and >= 0");
  }
}

double penalty_norm(std::span<const double> r, Penalty penalty) {
  double acc = 0.0;
  if (penalty == Penalty::kGroup) {
    for (double v : r) acc += v * v;
    return std::sqrt(acc);
  }
  for (double v : r) acc += std::abs(v);
  return acc;
}

double difference_penalty(const BlockVector& x, Penalty penalty) {
  const std::size_t d = x.block_dim();
  std::vector<double> diff(d);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < x.num_blocks(); ++i) {
    auto a = x.block(i);
    auto b = x.block(i + 1);
    for (std::size_t j = 0; j < d; ++j) diff[j] = b[j] - a[j];
    total += penalty_norm(diff, penalty);
  }
  return total;
}

ProxMap difference_prox(double lambda, Penalty penalty) {
  if (penalty == Penalty::kGroup) {
    return [lambda](std::size_t, std::span<const double> vbar, double rho,
                    std::span<double> out) {
      soft_threshold_group(vbar, lambda / rho, out);
    };
  }
  return [lambda](std::size_t, std::span<const double> vbar, double rho,
                  std::span<double> out) {
    soft_threshold_scalar(vbar, lambda / rho, out);
  };
}

double quadratic_misfit(const CholeskyFactor& sigma_factor,
                        const TimeSeries& data, const BlockVector& x) {
  const std::size_t n = data.dim();
  std::vector<double> diff(n);
  double total = 0.0;
  for (std::size_t i = 0; i < data.num_samples(); ++i) {
    auto y = data.sample(i);
    auto xi = x.block(i);
    for (std::size_t j = 0; j < n; ++j) diff[j] = y[j] - xi[j];
    const std::vector<double> w = forward_solve(sigma_factor, diff);
    for (double v : w) total += 0.5 * v * v;
  }
  return total;
}

std::optional<SymMatrix> block_as_matrix(std::size_t n,
                                         std::span<const double> flat) {
  try {
    return SymMatrix::from_row_major(n, flat);
  } catch (const InvalidInputError&) {
    return std::nullopt;
  }
}

std::optional<CholeskyFactor> try_factor(const SymMatrix& a) {
  try {
    return spd_factor(a);
  } catch (const NotPositiveDefiniteError&) {
    return std::nullopt;
  }
}

}  // namespace

TimeSeries::TimeSeries(BlockVector samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw InvalidInputError("TimeSeries: no samples");
  if (!samples_.all_finite()) {
    throw InvalidInputError("TimeSeries: non-finite sample");
  }
}

double default_rho(double lambda) { return lambda > 0.0 ? lambda : 1.0; }

double mean_filter_objective(const TimeSeries& data, const MeanFilterSpec& spec,
                             const BlockVector& x) {
  if (x.num_blocks() != data.num_samples() || x.block_dim() != data.dim()) {
    throw InvalidInputError("mean_filter_objective: shape mismatch");
  }
  const CholeskyFactor factor = spd_factor(spec.sigma);
  return quadratic_misfit(factor, data, x) +
         spec.lambda * difference_penalty(x, spec.penalty);
}

ChainProblem make_mean_filter_problem(const TimeSeries& data,
                                      const MeanFilterSpec& spec, double rho) {
  check_lambda(spec.lambda);
  if (spec.sigma.dim() != data.dim()) {
    throw InvalidInputError("mean filter: sigma is " +
                            std::to_string(spec.sigma.dim()) + "x" +
                            std::to_string(spec.sigma.dim()) +
                            " but the data has dimension " +
                            std::to_string(data.dim()));
  }
  auto cache = std::make_shared<const GaussianProxCache>(spec.sigma,
                                                         data.samples(), rho);
  auto sigma_factor = std::make_shared<const CholeskyFactor>(spd_factor(spec.sigma));
  auto series = std::make_shared<const TimeSeries>(data);

  ChainProblem problem;
  problem.num_blocks = data.num_samples();
  problem.block_dim = data.dim();
  problem.phi_prox = [cache, rho](std::size_t i, std::span<const double> vbar,
                                  double step_rho, std::span<double> out) {
    if (step_rho != rho) {
      throw InvalidInputError("mean filter prox was built for a different rho");
    }
    cache->apply(i, vbar, out);
  };
  problem.psi_prox = difference_prox(spec.lambda, spec.penalty);
  const double lambda = spec.lambda;
  const Penalty penalty = spec.penalty;
  problem.objective = [sigma_factor, series, lambda, penalty](
                          const BlockVector& x, const BlockVector&) {
    return quadratic_misfit(*sigma_factor, *series, x) +
           lambda * difference_penalty(x, penalty);
  };
  return problem;
}

MeanFilterResult mean_filter(const TimeSeries& data, const MeanFilterSpec& spec,
                             SolverConfig config,
                             const std::optional<WarmStart>& initial) {
  check_lambda(spec.lambda);
  if (!config.rho) config.rho = default_rho(spec.lambda);
  config.validate();
  SolverReport report =
      solve(make_mean_filter_problem(data, spec, *config.rho), config, initial);
  BlockVector estimates = report.x_star;
  return {std::move(estimates), std::move(report)};
}

std::vector<SymMatrix> scatter_matrices(const TimeSeries& data,
                                        std::size_t window) {
  if (window == 0) throw InvalidInputError("window must be >= 1");
  const std::size_t n_samples = data.num_samples();
  std::vector<SymMatrix> outer;
  outer.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    outer.push_back(SymMatrix::outer(data.sample(i)));
  }
  if (window == 1) return outer;

  const std::size_t before = (window - 1) / 2;
  const std::size_t after = window / 2;
  std::vector<SymMatrix> out;
  out.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const std::size_t lo = i >= before ? i - before : 0;
    const std::size_t hi = std::min(n_samples - 1, i + after);
    SymMatrix acc(data.dim());
    for (std::size_t j = lo; j <= hi; ++j) acc += outer[j];
    acc *= 1.0 / static_cast<double>(hi - lo + 1);
    out.push_back(std::move(acc));
  }
  return out;
}

double variance_filter_objective(const std::vector<SymMatrix>& scatter,
                                 const VarianceFilterSpec& spec,
                                 const BlockVector& x) {
  if (scatter.size() != x.num_blocks()) {
    throw InvalidInputError("variance_filter_objective: shape mismatch");
  }
  const std::size_t n = scatter.front().dim();
  if (x.block_dim() != n * n) {
    throw InvalidInputError("variance_filter_objective: block is not n^2");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < x.num_blocks(); ++i) {
    const auto xi = block_as_matrix(n, x.block(i));
    if (!xi) return std::numeric_limits<double>::infinity();
    const auto factor = try_factor(*xi);
    if (!factor) return std::numeric_limits<double>::infinity();
    double tr = 0.0;
    auto xs = xi->data();
    auto ss = scatter[i].data();
    for (std::size_t k = 0; k < xs.size(); ++k) tr += xs[k] * ss[k];
    total += tr - factor->log_det();
  }
  return total + spec.lambda * difference_penalty(x, spec.penalty);
}

ChainProblem make_variance_filter_problem(const TimeSeries& data,
                                          const VarianceFilterSpec& spec) {
  check_lambda(spec.lambda);
  const std::size_t n = data.dim();
  auto scatter = std::make_shared<const std::vector<SymMatrix>>(
      scatter_matrices(data, spec.window));

  ChainProblem problem;
  problem.num_blocks = data.num_samples();
  problem.block_dim = n * n;
  problem.phi_prox = [scatter, n](std::size_t i, std::span<const double> vbar,
                                  double step_rho, std::span<double> out) {
    const SymMatrix v = SymMatrix::from_row_major(n, vbar);
    const SymMatrix x = prox_neg_logdet(v, (*scatter)[i], step_rho);
    std::copy(x.data().begin(), x.data().end(), out.begin());
  };
  problem.psi_prox = difference_prox(spec.lambda, spec.penalty);
  problem.objective = [scatter, spec](const BlockVector& x, const BlockVector&) {
    return variance_filter_objective(*scatter, spec, x);
  };
  return problem;
}

VarianceFilterResult variance_filter(const TimeSeries& data,
                                     const VarianceFilterSpec& spec,
                                     SolverConfig config) {
  check_lambda(spec.lambda);
  const std::size_t n = data.dim();
  const std::vector<SymMatrix> scatter = scatter_matrices(data, spec.window);
  if (spec.lambda == 0.0) {
    for (std::size_t i = 0; i < scatter.size(); ++i) {
      if (!is_positive_definite(scatter[i])) {
        throw UnboundedProblemError(
            "variance filter is unbounded below: with lambda = 0 the scatter "
            "matrix at step " + std::to_string(i + 1) +
            " is singular (increase lambda or the window length)");
      }
    }
  } else {
    SymMatrix pooled(n);
    for (const auto& s : scatter) pooled += s;
    if (!is_positive_definite(pooled)) {
      throw UnboundedProblemError(
          "variance filter is unbounded below: the pooled scatter matrix is "
          "singular");
    }
  }

  if (!config.rho) config.rho = default_rho(spec.lambda);
  config.validate();
  SolverReport report =
      solve(make_variance_filter_problem(data, spec), config);

  VarianceEstimate estimate;
  estimate.precision.reserve(data.num_samples());
  estimate.covariance.reserve(data.num_samples());
  for (std::size_t i = 0; i < data.num_samples(); ++i) {
    // The feasible-side block is preferred; the prox output is always
    // positive definite and stands in when the projection is not.
    std::optional<SymMatrix> x = block_as_matrix(n, report.x_star.block(i));
    std::optional<CholeskyFactor> factor;
    if (x) factor = try_factor(*x);
    if (!factor) {
      x = SymMatrix::from_row_major(n, report.final_state.x.block(i));
      factor = spd_factor(*x);
    }
    estimate.covariance.push_back(spd_inverse(*factor));
    estimate.precision.push_back(std::move(*x));
  }
  return {std::move(estimate), std::move(report)};
}

double lambda_max_mean(const TimeSeries& data, const SymMatrix& sigma,
                       Penalty penalty) {
  const std::size_t n_samples = data.num_samples();
  const std::size_t n = data.dim();
  if (n_samples < 2) {
    throw InvalidInputError("lambda_max_mean: need at least 2 samples");
  }
  if (sigma.dim() != n) {
    throw InvalidInputError("lambda_max_mean: sigma dimension mismatch");
  }
  const CholeskyFactor factor = spd_factor(sigma);

  std::vector<double> mean(n, 0.0);
  for (std::size_t i = 0; i < n_samples; ++i) {
    auto y = data.sample(i);
    for (std::size_t j = 0; j < n; ++j) mean[j] += y[j];
  }
  for (double& m : mean) m /= static_cast<double>(n_samples);

  // Partial sums of centred residuals; Sigma^{-1} is applied once per sum.
  std::vector<double> partial(n, 0.0);
  double best = 0.0;
  for (std::size_t k = 0; k + 1 < n_samples; ++k) {
    auto y = data.sample(k);
    for (std::size_t j = 0; j < n; ++j) partial[j] += y[j] - mean[j];
    const std::vector<double> weighted = spd_solve(factor, partial);
    double norm = 0.0;
    if (penalty == Penalty::kGroup) {
      for (double v : weighted) norm += v * v;
      norm = std::sqrt(norm);
    } else {
      for (double v : weighted) norm = std::max(norm, std::abs(v));
    }
    best = std::max(best, norm);
  }
  return best;
}

double lambda_max_variance(const TimeSeries& data, Penalty penalty,
                           std::size_t window) {
  if (data.num_samples() < 2) {
    throw InvalidInputError("lambda_max_variance: need at least 2 samples");
  }
  const std::vector<SymMatrix> scatter = scatter_matrices(data, window);
  const std::size_t n = data.dim();
  SymMatrix mean(n);
  for (const auto& s : scatter) mean += s;
  mean *= 1.0 / static_cast<double>(scatter.size());
  if (!is_positive_definite(mean)) {
    throw UnboundedProblemError(
        "lambda_max_variance: the pooled scatter matrix is singular");
  }
  SymMatrix partial(n);
  double best = 0.0;
  for (std::size_t k = 0; k + 1 < scatter.size(); ++k) {
    partial += scatter[k];
    partial -= mean;
    best = std::max(best, penalty == Penalty::kGroup ? partial.frobenius_norm()
                                                     : partial.max_abs());
  }
  return best;
}

std::vector<Segment> segments(const BlockVector& estimates, double tol) {
  if (!(tol > 0.0)) throw InvalidInputError("segments: tol must be > 0");
  std::vector<Segment> out;
  if (estimates.empty()) return out;
  const std::size_t d = estimates.block_dim();
  auto close_segment = [&](std::size_t begin, std::size_t end) {
    Segment seg{begin + 1, end + 1, std::vector<double>(d, 0.0)};
    for (std::size_t i = begin; i <= end; ++i) {
      auto b = estimates.block(i);
      for (std::size_t j = 0; j < d; ++j) seg.level[j] += b[j];
    }
    for (double& v : seg.level) v /= static_cast<double>(end - begin + 1);
    out.push_back(std::move(seg));
  };

  std::size_t start = 0;
  for (std::size_t i = 0; i + 1 < estimates.num_blocks(); ++i) {
    auto a = estimates.block(i);
    auto b = estimates.block(i + 1);
    double jump = 0.0;
    for (std::size_t j = 0; j < d; ++j) jump = std::max(jump, std::abs(b[j] - a[j]));
    if (jump > tol) {
      close_segment(start, i);
      start = i + 1;
    }
  }
  close_segment(start, estimates.num_blocks() - 1);
  return out;
}

double default_segment_tolerance(const BlockVector& estimates) {
  double spread = 0.0;
  const std::size_t d = estimates.block_dim();
  for (std::size_t j = 0; j < d; ++j) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < estimates.num_blocks(); ++i) {
      lo = std::min(lo, estimates.block(i)[j]);
      hi = std::max(hi, estimates.block(i)[j]);
    }
    spread = std::max(spread, hi - lo);
  }
  return std::max(1e-3 * spread, 1e-12);
}

}  // namespace tvadmm
