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

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "parallel_for.hpp"
#include "tvadmm/error.hpp"

namespace tvadmm {

namespace {

double sq_norm(const BlockVector& v) {
  double acc = 0.0;
  for (double e : v.flat()) acc += e * e;
  return acc;
}

double sq_diff(const BlockVector& a, const BlockVector& b) {
  double acc = 0.0;
  auto fa = a.flat();
  auto fb = b.flat();
  for (std::size_t k = 0; k < fa.size(); ++k) {
    const double d = fa[k] - fb[k];
    acc += d * d;
  }
  return acc;
}

bool same_shape(const BlockVector& a, std::size_t blocks, std::size_t dim) {
  return blocks == 0 ? a.empty()
                     : a.num_blocks() == blocks && a.block_dim() == dim;
}

BlockVector zeros_or_empty(std::size_t blocks, std::size_t dim) {
  return blocks == 0 ? BlockVector() : BlockVector(blocks, dim);
}

}  // namespace

void SolverConfig::validate() const {
  if (rho && (!(*rho > 0.0) || !std::isfinite(*rho))) {
    throw InvalidInputError("rho must be finite and > 0");
  }
  if (!(alpha >= 1.0 && alpha < 2.0)) {
    throw InvalidInputError("alpha must lie in [1, 2)");
  }
  if (!(eps_abs > 0.0) || !(eps_rel > 0.0)) {
    throw InvalidInputError("eps_abs and eps_rel must be > 0");
  }
  if (max_iter < 1) throw InvalidInputError("max_iter must be >= 1");
  if (threads < 1) throw InvalidInputError("threads must be >= 1");
  if (!(divergence_floor > 0.0)) {
    throw InvalidInputError("divergence_floor must be > 0");
  }
}

Residuals residuals(const AdmmState& state, const BlockVector& z_prev,
                    const BlockVector& s_prev, double rho, double eps_abs,
                    double eps_rel) {
  const double p = static_cast<double>(state.z.size() + state.s.size());
  const double primal = std::sqrt(sq_diff(state.x, state.z) + sq_diff(state.r, state.s));
  const double dual =
      rho * std::sqrt(sq_diff(state.z, z_prev) + sq_diff(state.s, s_prev));
  const double xr = std::sqrt(sq_norm(state.x) + sq_norm(state.r));
  const double zs = std::sqrt(sq_norm(state.z) + sq_norm(state.s));
  const double ut = std::sqrt(sq_norm(state.u) + sq_norm(state.t));
  const double abs_part = std::sqrt(p) * eps_abs;
  return {primal, dual, abs_part + eps_rel * std::max(xr, zs),
          abs_part + eps_rel * rho * ut};
}

void over_relax(double alpha, const BlockVector& fresh,
                const BlockVector& previous, BlockVector& out) {
  auto f = fresh.flat();
  auto p = previous.flat();
  auto o = out.flat();
  if (alpha == 1.0) {
    std::copy(f.begin(), f.end(), o.begin());
    return;
  }
  const double beta = 1.0 - alpha;
  for (std::size_t k = 0; k < f.size(); ++k) o[k] = alpha * f[k] + beta * p[k];
}

AdmmSolver::AdmmSolver(ChainProblem problem, SolverConfig config,
                       const std::optional<WarmStart>& initial)
    : problem_(std::move(problem)), config_(std::move(config)) {
  config_.validate();
  rho_ = config_.rho.value_or(1.0);
  const std::size_t n = problem_.num_blocks;
  const std::size_t d = problem_.block_dim;
  if (n == 0 || d == 0) {
    throw InvalidInputError("ChainProblem: need N >= 1 blocks of dim >= 1");
  }
  if (!problem_.phi_prox || (n > 1 && !problem_.psi_prox)) {
    throw InvalidInputError("ChainProblem: missing proximal map");
  }
  const std::size_t m = n - 1;
  if (n >= 2) chol_ = chain_factor(n);

  state_.x = BlockVector(n, d);
  state_.z = BlockVector(n, d);
  state_.u = BlockVector(n, d);
  state_.r = zeros_or_empty(m, d);
  state_.s = zeros_or_empty(m, d);
  state_.t = zeros_or_empty(m, d);
  if (initial) {
    if (!same_shape(initial->z, n, d) || !same_shape(initial->u, n, d) ||
        !same_shape(initial->s, m, d) || !same_shape(initial->t, m, d)) {
      throw InvalidInputError("warm start does not match the problem shape");
    }
    state_.z = initial->z;
    state_.s = initial->s;
    state_.u = initial->u;
    state_.t = initial->t;
  }
  z_prev_ = state_.z;
  s_prev_ = state_.s;
  x_hat_ = BlockVector(n, d);
  w_ = BlockVector(n, d);
  r_hat_ = zeros_or_empty(m, d);
  v_ = zeros_or_empty(m, d);
  if (config_.threads > 1) pool_ = std::make_unique<ParallelFor>(config_.threads);
}

AdmmSolver::~AdmmSolver() = default;
AdmmSolver::AdmmSolver(AdmmSolver&&) noexcept = default;
AdmmSolver& AdmmSolver::operator=(AdmmSolver&&) noexcept = default;

void AdmmSolver::check_finite_block(const BlockVector& v,
                                    const char* which) const {
  for (std::size_t i = 0; i < v.num_blocks(); ++i) {
    for (double e : v.block(i)) {
      if (!std::isfinite(e)) {
        throw NumericalError(std::string(which) +
                             " prox returned a non-finite value at iteration " +
                             std::to_string(iteration_ + 1) + ", block " +
                             std::to_string(i));
      }
    }
  }
}

void AdmmSolver::prox_step() {
  const std::size_t n = problem_.num_blocks;
  const std::size_t d = problem_.block_dim;
  const std::size_t total = 2 * n - 1;

  // Index k < n is x_k, k >= n is r_{k-n}.
  auto body = [&](std::size_t begin, std::size_t end) {
    std::vector<double> vbar(d);
    for (std::size_t k = begin; k < end; ++k) {
      if (k < n) {
        auto z = state_.z.block(k);
        auto u = state_.u.block(k);
        for (std::size_t j = 0; j < d; ++j) vbar[j] = z[j] - u[j];
        problem_.phi_prox(k, vbar, rho_, state_.x.block(k));
      } else {
        const std::size_t i = k - n;
        auto s = state_.s.block(i);
        auto t = state_.t.block(i);
        for (std::size_t j = 0; j < d; ++j) vbar[j] = s[j] - t[j];
        problem_.psi_prox(i, vbar, rho_, state_.r.block(i));
      }
    }
  };
  if (pool_) {
    pool_->run(total, body);
  } else {
    body(0, total);
  }
  check_finite_block(state_.x, "block");
  check_finite_block(state_.r, "difference");
}

Residuals AdmmSolver::step() {
  prox_step();
  std::swap(z_prev_, state_.z);
  std::swap(s_prev_, state_.s);

  if (!chol_) {
    // Single block: the chain subspace is everything, the projection is the
    // identity and the scaled dual stays at zero.
    state_.z = state_.x;
  } else {
    over_relax(config_.alpha, state_.x, z_prev_, x_hat_);
    over_relax(config_.alpha, state_.r, s_prev_, r_hat_);
    {
      auto xh = x_hat_.flat();
      auto u = state_.u.flat();
      auto w = w_.flat();
      for (std::size_t k = 0; k < w.size(); ++k) w[k] = xh[k] + u[k];
      auto rh = r_hat_.flat();
      auto t = state_.t.flat();
      auto v = v_.flat();
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = rh[k] + t[k];
    }
    project(*chol_, w_, v_, state_.z, state_.s);
    {
      auto xh = x_hat_.flat();
      auto z = state_.z.flat();
      auto u = state_.u.flat();
      for (std::size_t k = 0; k < u.size(); ++k) u[k] += xh[k] - z[k];
      auto rh = r_hat_.flat();
      auto s = state_.s.flat();
      auto t = state_.t.flat();
      for (std::size_t k = 0; k < t.size(); ++k) t[k] += rh[k] - s[k];
    }
  }
  ++iteration_;
  return residuals(state_, z_prev_, s_prev_, rho_, config_.eps_abs,
                   config_.eps_rel);
}

SolverReport AdmmSolver::run() {
  SolverReport report;
  report.rho = rho_;
  const bool track = config_.record_objective && problem_.objective;
  while (iteration_ < config_.max_iter) {
    const Residuals res = step();
    report.history.push_back({iteration_, res});
    if (track) {
      const double obj = problem_.objective(state_.z, state_.s);
      report.objective_trace.push_back(obj);
      if (obj < -config_.divergence_floor) {
        throw UnboundedProblemError(
            "objective fell below -" + std::to_string(config_.divergence_floor) +
            " at iteration " + std::to_string(iteration_) +
            "; the problem appears unbounded below");
      }
    }
    if (res.converged()) {
      report.converged = true;
      break;
    }
  }
  report.iterations = iteration_;
  report.x_star = state_.z;
  report.r_star = state_.s;
  report.final_state = state_;
  return report;
}

SolverReport solve(const ChainProblem& problem, const SolverConfig& config,
                   const std::optional<WarmStart>& initial) {
  AdmmSolver solver(problem, config, initial);
  return solver.run();
}

}  // namespace tvadmm
