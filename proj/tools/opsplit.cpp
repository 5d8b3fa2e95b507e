#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "opsplit/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Operator-splitting methods and their iterate correspondences"};
  app.require_subcommand(1);

  opsplit::cli::Overrides run_opts;
  std::string run_config;
  auto* run = app.add_subcommand("run", "Run a method from a config file and write its CSV trace");
  run->add_option("--config", run_config, "Config file (JSON)")->required();
  run->add_option("--iters", run_opts.iterations, "Iteration budget, overriding the config");
  run->add_option("--tol", run_opts.tol, "Stop tolerance on the step residual");
  run->add_option("--out", run_opts.out, "CSV output path (default: stdout)");

  opsplit::cli::Overrides verify_opts;
  std::string verify_config;
  std::string theorem;
  auto* verify = app.add_subcommand("verify", "Check an iterate correspondence on the configured problem");
  verify->add_option("theorem", theorem,
                     "dr-admm, admm-dr, pr-admm-int, admm-int-pr, cp-dr-id, cp-dr-lift or dykstra-map-subspace")
      ->required();
  verify->add_option("--config", verify_config, "Config file (JSON)")->required();
  verify->add_option("--iters", verify_opts.iterations, "Number of iterates to compare");
  verify->add_option("--tol", verify_opts.tol, "Absolute tolerance per iterate");
  verify->add_option("--out", verify_opts.out, "CSV report path (default: stdout)");

  double alpha = -2.0;
  double beta = 1.0;
  std::size_t n = 200;
  auto* counter = app.add_subcommand("counterexample", "Compare MAP and Dykstra on the line / half-plane pair");
  counter->add_option("--alpha", alpha, "Negative first coordinate of the start")->capture_default_str();
  counter->add_option("--beta", beta, "Positive second coordinate, at most -alpha")->capture_default_str();
  counter->add_option("--iters", n, "Number of iterations")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : opsplit::cli::kExitBadInput;
  }

  if (*run) return opsplit::cli::cmd_run(run_config, run_opts, std::cout, std::cerr);
  if (*verify) return opsplit::cli::cmd_verify(theorem, verify_config, verify_opts, std::cout, std::cerr);
  return opsplit::cli::cmd_counterexample(alpha, beta, n, std::cout, std::cerr);
}
