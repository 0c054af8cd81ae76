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

#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>

#include "cli/csv.hpp"
#include "cli/synth.hpp"
#include "tvadmm/error.hpp"

namespace tvadmm::cli {

namespace {

SolverConfig solver_config(const RunConfig& cfg) {
  SolverConfig config;
  config.rho = cfg.rho;
  config.alpha = cfg.alpha;
  config.eps_abs = cfg.eps_abs;
  config.eps_rel = cfg.eps_rel;
  config.max_iter = cfg.max_iter;
  config.threads = cfg.threads;
  return config;
}

void write_residuals(const std::string& path, const SolverReport& report) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInputError("cannot write " + path);
  out << "iter,primal,dual,eps_pri,eps_dual\n";
  for (const auto& rec : report.history) {
    out << rec.iter << ',' << format_double(rec.residuals.primal) << ','
        << format_double(rec.residuals.dual) << ','
        << format_double(rec.residuals.eps_pri) << ','
        << format_double(rec.residuals.eps_dual) << '\n';
  }
  if (!out) throw InvalidInputError("error writing " + path);
}

void print_summary(std::ostream& out, double lambda, const SolverReport& report,
                   const BlockVector& levels) {
  out << "lambda: " << format_double(lambda) << '\n';
  out << "rho: " << format_double(report.rho) << '\n';
  out << "iterations: " << report.iterations << '\n';
  out << "converged: " << (report.converged ? "yes" : "no") << '\n';
  const auto segs = segments(levels, default_segment_tolerance(levels));
  out << "segments: " << segs.size() << '\n';
  out << "start,end,level\n";
  for (const auto& seg : segs) {
    out << seg.start << ',' << seg.end;
    for (double v : seg.level) out << ',' << format_double(v);
    out << '\n';
  }
}

int exit_for(const SolverReport& report) {
  return report.converged ? kExitConverged : kExitNotConverged;
}

double resolve_lambda(const RunConfig& cfg, double lambda_max_value) {
  if (cfg.lambda_frac) return *cfg.lambda_frac * lambda_max_value;
  return *cfg.lambda;
}

void require_lambda(const RunConfig& cfg) {
  if (cfg.lambda.has_value() == cfg.lambda_frac.has_value()) {
    throw InvalidInputError("exactly one of --lambda or --lambda-frac is required");
  }
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const UnboundedProblemError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnbounded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

Penalty parse_penalty(const std::string& name) {
  if (name == "group" || name == "frobenius") return Penalty::kGroup;
  if (name == "elementwise") return Penalty::kElementwise;
  throw InvalidInputError("unknown penalty '" + name + "'");
}

}  // namespace

std::string default_precision_path(const std::string& output) {
  std::filesystem::path p(output);
  const std::string stem =
      p.extension() == ".csv" ? p.stem().string() : p.filename().string();
  return (p.parent_path() / (stem + "_precision.csv")).string();
}

int run_mean(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_lambda(cfg);
    const TimeSeries data(read_blocks(cfg.input));
    MeanFilterSpec spec;
    spec.penalty = cfg.penalty;
    spec.sigma = cfg.sigma.empty() ? SymMatrix::identity(data.dim())
                                   : read_matrix(cfg.sigma);
    if (spec.sigma.dim() != data.dim()) {
      throw InvalidInputError("sigma is " + std::to_string(spec.sigma.dim()) +
                              "x" + std::to_string(spec.sigma.dim()) +
                              " but the input has " +
                              std::to_string(data.dim()) + " columns");
    }
    spec.lambda = resolve_lambda(
        cfg, cfg.lambda_frac ? lambda_max_mean(data, spec.sigma, spec.penalty) : 0.0);
    const MeanFilterResult result = mean_filter(data, spec, solver_config(cfg));
    write_blocks(cfg.output, result.estimates);
    write_residuals(cfg.residuals, result.report);
    print_summary(out, spec.lambda, result.report, result.estimates);
    return exit_for(result.report);
  });
}

int run_var(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_lambda(cfg);
    const TimeSeries data(read_blocks(cfg.input));
    VarianceFilterSpec spec;
    spec.penalty = cfg.penalty;
    spec.window = cfg.window;
    spec.lambda = resolve_lambda(
        cfg, cfg.lambda_frac ? lambda_max_variance(data, spec.penalty, spec.window)
                             : 0.0);
    VarianceFilterResult result;
    try {
      result = variance_filter(data, spec, solver_config(cfg));
    } catch (const UnboundedProblemError& e) {
      throw UnboundedProblemError(std::string(e.what()) + " [lambda = " +
                                  format_double(spec.lambda) + ", window = " +
                                  std::to_string(spec.window) + "]");
    }
    const std::size_t n = data.dim();
    BlockVector cov(data.num_samples(), n * n);
    BlockVector prec(data.num_samples(), n * n);
    for (std::size_t i = 0; i < data.num_samples(); ++i) {
      const auto c = result.estimate.covariance[i].data();
      const auto p = result.estimate.precision[i].data();
      std::copy(c.begin(), c.end(), cov.block(i).begin());
      std::copy(p.begin(), p.end(), prec.block(i).begin());
    }
    write_blocks(cfg.output, cov);
    write_blocks(cfg.precision.empty() ? default_precision_path(cfg.output)
                                       : cfg.precision,
                 prec);
    write_residuals(cfg.residuals, result.report);
    print_summary(out, spec.lambda, result.report, cov);
    return exit_for(result.report);
  });
}

int run_lambda_max(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const TimeSeries data(read_blocks(cfg.input));
    const SymMatrix sigma = cfg.sigma.empty() ? SymMatrix::identity(data.dim())
                                              : read_matrix(cfg.sigma);
    out << format_double(lambda_max_mean(data, sigma, cfg.penalty)) << '\n';
    return kExitConverged;
  });
}

int run_synth(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    SynthConfig sc;
    sc.seed = cfg.seed;
    sc.num_samples = cfg.num_samples;
    sc.dim = cfg.dim;
    sc.segments = cfg.segments;
    if (!cfg.sigma.empty()) sc.sigma = read_matrix(cfg.sigma);
    const SynthData synth = generate_synthetic(sc);
    write_blocks(cfg.output, synth.data);
    write_blocks(cfg.truth, synth.truth);
    out << "change points:";
    for (std::size_t c : synth.change_points) out << ' ' << c + 1;
    out << '\n';
    return kExitConverged;
  });
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  RunConfig cfg;
  std::string penalty = "group";

  CLI::App app{"Total-variation regularized estimation via chain ADMM", "tvadmm"};
  app.require_subcommand(1);

  auto add_solver_flags = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "Input CSV, one time step per row")
        ->required();
    sub->add_option("--output", cfg.output, "Estimates CSV")->required();
    sub->add_option("--residuals", cfg.residuals, "Residual history CSV")
        ->required();
    auto* lam = sub->add_option("--lambda", cfg.lambda, "Regularization weight");
    auto* frac = sub->add_option("--lambda-frac", cfg.lambda_frac,
                                 "Regularization as a fraction of lambda_max");
    lam->excludes(frac);
    sub->add_option("--penalty", penalty, "group|elementwise")
        ->check(CLI::IsMember({"group", "elementwise", "frobenius"}));
    sub->add_option("--rho", cfg.rho, "ADMM penalty (default: lambda)");
    sub->add_option("--alpha", cfg.alpha, "Over-relaxation in [1, 2)");
    sub->add_option("--eps-abs", cfg.eps_abs, "Absolute tolerance");
    sub->add_option("--eps-rel", cfg.eps_rel, "Relative tolerance");
    sub->add_option("--max-iter", cfg.max_iter, "Iteration cap");
    sub->add_option("--threads", cfg.threads, "Worker threads (1 = sequential)");
  };

  auto* mean = app.add_subcommand("mean", "l1 mean filtering");
  add_solver_flags(mean);
  mean->add_option("--sigma", cfg.sigma, "Noise covariance CSV (n x n)");

  auto* var = app.add_subcommand("var", "l1 variance filtering");
  add_solver_flags(var);
  var->add_option("--window", cfg.window, "Outer products averaged per step")
      ->check(CLI::PositiveNumber);
  var->add_option("--precision-output", cfg.precision,
                  "Precision-matrix CSV (default: <output>_precision.csv)");

  auto* lmax = app.add_subcommand("lambda-max", "Print lambda_max for mean filtering");
  lmax->add_option("--input", cfg.input, "Input CSV")->required();
  lmax->add_option("--sigma", cfg.sigma, "Noise covariance CSV (n x n)");
  lmax->add_option("--penalty", penalty, "group|elementwise")
      ->check(CLI::IsMember({"group", "elementwise"}));

  auto* synth = app.add_subcommand("synth", "Generate piecewise-constant test data");
  synth->add_option("--output", cfg.output, "Data CSV")->required();
  synth->add_option("--truth", cfg.truth, "Ground-truth means CSV")->required();
  synth->add_option("--seed", cfg.seed, "Random seed");
  synth->add_option("--n-samples", cfg.num_samples, "Number of samples");
  synth->add_option("--dim", cfg.dim, "Sample dimension");
  synth->add_option("--segments", cfg.segments, "Number of segments");
  synth->add_option("--sigma", cfg.sigma, "Noise covariance CSV (n x n)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitConverged;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInputError;
  }

  cfg.penalty = parse_penalty(penalty);
  if (mean->parsed()) {
    cfg.subcommand = "mean";
    return run_mean(cfg, out, err);
  }
  if (var->parsed()) {
    cfg.subcommand = "var";
    return run_var(cfg, out, err);
  }
  if (lmax->parsed()) {
    cfg.subcommand = "lambda-max";
    return run_lambda_max(cfg, out, err);
  }
  cfg.subcommand = "synth";
  return run_synth(cfg, out, err);
}

}  // namespace tvadmm::cli
