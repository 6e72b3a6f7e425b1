// fmodel: batch front-end for the Friedrichs-model toolkit.
//
// Subcommands read a line-oriented config (see docs/formats.md), run the
// requested computation and write CSV / plain-text reports.  Outputs are
// byte-identical for a fixed config regardless of --workers.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "friedrichs/config.hpp"
#include "friedrichs/errors.hpp"
#include "friedrichs/runner.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  int workers = 1;
  std::uint64_t seed = 12345;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "model/run configuration file")->required();
  cmd->add_option("--out", args.out_dir, "output directory (overrides [output] dir)");
  cmd->add_option("--workers", args.workers, "worker thread count")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", args.seed, "seed for randomized checks");
}

friedrichs::RunConfig load(const CommonArgs& args) {
  friedrichs::RunConfig cfg = friedrichs::load_config_file(args.config_path);
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Friedrichs-model spectral toolkit"};
  app.require_subcommand(1);

  CommonArgs args;
  auto* scan = app.add_subcommand("scan", "eigenvalue/band/determinant surfaces over a p-grid");
  auto* threshold = app.add_subcommand(
      "threshold", "classification, threshold expansion fit, inequality and assumption reports");
  auto* classify = app.add_subcommand("classify", "threshold classification only");
  auto* verify = app.add_subcommand("verify", "structural checks (CND, Hessian blocks, assumptions)");
  auto* oracle = app.add_subcommand("oracle", "brute-force discrete model vs determinant solver");
  for (auto* cmd : {scan, threshold, classify, verify, oracle}) add_common(cmd, args);

  CLI11_PARSE(app, argc, argv);

  try {
    friedrichs::RunConfig cfg = load(args);
    if (scan->parsed()) return friedrichs::run_scan(cfg, args.workers, std::cout);
    if (threshold->parsed()) return friedrichs::run_threshold_report(cfg, args.workers, std::cout);
    if (classify->parsed()) return friedrichs::run_classify(cfg, args.workers, std::cout);
    if (verify->parsed()) return friedrichs::run_verify(cfg, args.workers, args.seed, std::cout);
    if (oracle->parsed()) return friedrichs::run_oracle(cfg, args.workers, args.seed, std::cout);
  } catch (const friedrichs::ConfigError& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
