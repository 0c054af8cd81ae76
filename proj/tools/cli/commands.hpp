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

#ifndef TVADMM_TOOLS_CLI_COMMANDS_HPP_
#define TVADMM_TOOLS_CLI_COMMANDS_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tvadmm/filters.hpp"

namespace tvadmm::cli {

// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kExitConverged = 0,
  kExitInputError = 1,
  kExitNotConverged = 2,
  kExitUnbounded = 3,
};

struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string output;
  std::string residuals;
  std::string truth;
  std::string sigma;       // optional; identity when empty
  std::string precision;   // var only; derived from output when empty
  std::optional<double> lambda;
  std::optional<double> lambda_frac;
  std::optional<double> rho;
  double alpha = 1.8;
  double eps_abs = 1e-4;
  double eps_rel = 1e-3;
  int max_iter = 10000;
  int threads = 1;
  Penalty penalty = Penalty::kGroup;
  std::size_t window = 1;
  std::uint64_t seed = 0;
  std::size_t num_samples = 400;
  std::size_t dim = 1;
  std::size_t segments = 5;
};

int run_mean(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_var(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_lambda_max(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_synth(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv (argv[0] is the program name) and dispatches.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// "<stem>_precision.csv" next to the covariance output.
std::string default_precision_path(const std::string& output);

}  // namespace tvadmm::cli

#endif  // TVADMM_TOOLS_CLI_COMMANDS_HPP_
