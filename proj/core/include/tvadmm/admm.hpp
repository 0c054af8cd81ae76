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

#ifndef TVADMM_ADMM_HPP_
#define TVADMM_ADMM_HPP_

// ADMM for problems of the form
//
//   minimize   sum_i Phi_i(x_i) + sum_i Psi_i(r_i)
//   subject to r_i = x_{i+1} - x_i,
//
// split as x = z, r = s with (z, s) constrained to the chain subspace. Each
// iteration evaluates 2N - 1 independent proximal maps, projects the
// over-relaxed point onto the chain subspace, then updates the scaled duals.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tvadmm/block_vector.hpp"
#include "tvadmm/projection.hpp"

namespace tvadmm {

// Writes argmin_x F(x) + rho/2 ||x - vbar||^2 for block i into out.
using ProxMap = std::function<void(std::size_t i, std::span<const double> vbar,
                                   double rho, std::span<double> out)>;

// Objective value at a chain-feasible point (x, r = D x). May return +inf
// outside the domain.
using ObjectiveFn =
    std::function<double(const BlockVector& x, const BlockVector& r)>;

struct ChainProblem {
  std::size_t num_blocks = 0;
  std::size_t block_dim = 0;
  ProxMap phi_prox;  // N block terms
  ProxMap psi_prox;  // N - 1 difference terms; unused when N == 1
  ObjectiveFn objective;  // optional
};

struct SolverConfig {
  // Penalty parameter. Problem builders that carry a regularization weight
  // default it to that weight; the bare engine defaults to 1.
  std::optional<double> rho;
  double alpha = 1.8;
  double eps_abs = 1e-4;
  double eps_rel = 1e-3;
  int max_iter = 10000;
  // Worker threads for the block-separable steps; 1 is the sequential
  // reference mode.
  int threads = 1;
  bool record_objective = true;
  // An objective value below -divergence_floor is reported as unbounded.
  double divergence_floor = 1e8;

  // Throws InvalidInputError when a field is outside its range.
  void validate() const;
};

struct Residuals {
  double primal = 0.0;
  double dual = 0.0;
  double eps_pri = 0.0;
  double eps_dual = 0.0;

  bool converged() const { return primal <= eps_pri && dual <= eps_dual; }
};

struct ResidualRecord {
  int iter = 0;
  Residuals residuals;
};

// Full iterate. x, r are the prox outputs; z, s the projected (feasible)
// pair; u, t the scaled duals. r, s, t are empty when N == 1.
struct AdmmState {
  BlockVector x, r, z, s, u, t;
};

struct WarmStart {
  BlockVector z, s, u, t;
};

struct SolverReport {
  // Taken from the feasible side (z, s), so r_star = D x_star exactly.
  BlockVector x_star;
  BlockVector r_star;
  AdmmState final_state;
  int iterations = 0;
  bool converged = false;
  double rho = 0.0;
  std::vector<ResidualRecord> history;
  std::vector<double> objective_trace;

  WarmStart warm_start() const {
    return {final_state.z, final_state.s, final_state.u, final_state.t};
  }
};

// Stopping quantities at one iterate. The tolerance dimension is the full
// stacked primal length (2N - 1) d.
//   primal   = ||(x - z, r - s)||_2
//   dual     = rho ||(z - z_prev, s - s_prev)||_2
//   eps_pri  = sqrt(p) eps_abs + eps_rel max(||(x, r)||, ||(z, s)||)
//   eps_dual = sqrt(p) eps_abs + eps_rel rho ||(u, t)||
Residuals residuals(const AdmmState& state, const BlockVector& z_prev,
                    const BlockVector& s_prev, double rho, double eps_abs,
                    double eps_rel);

// Over-relaxation: out = alpha * fresh + (1 - alpha) * previous.
void over_relax(double alpha, const BlockVector& fresh,
                const BlockVector& previous, BlockVector& out);

class ParallelFor;

// Stepwise engine. solve() drives it to termination; tests may step it
// manually.
class AdmmSolver {
 public:
  AdmmSolver(ChainProblem problem, SolverConfig config,
             const std::optional<WarmStart>& initial = std::nullopt);
  ~AdmmSolver();
  AdmmSolver(AdmmSolver&&) noexcept;
  AdmmSolver& operator=(AdmmSolver&&) noexcept;

  // One full iteration. Throws NumericalError if a prox map returns a
  // non-finite value.
  Residuals step();

  const AdmmState& state() const noexcept { return state_; }
  int iteration() const noexcept { return iteration_; }
  double rho() const noexcept { return rho_; }

  SolverReport run();

 private:
  void prox_step();
  void check_finite_block(const BlockVector& v, const char* which) const;

  ChainProblem problem_;
  SolverConfig config_;
  double rho_;
  std::optional<ChainCholesky> chol_;
  AdmmState state_;
  BlockVector z_prev_, s_prev_, x_hat_, r_hat_, w_, v_;
  int iteration_ = 0;
  std::unique_ptr<ParallelFor> pool_;
};

SolverReport solve(const ChainProblem& problem, const SolverConfig& config,
                   const std::optional<WarmStart>& initial = std::nullopt);

}  // namespace tvadmm

#endif  // TVADMM_ADMM_HPP_
