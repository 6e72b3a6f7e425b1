#ifndef FRIEDRICHS_RUNNER_HPP
#define FRIEDRICHS_RUNNER_HPP

#include <cstdint>
#include <ostream>
#include <string>

#include "friedrichs/config.hpp"

namespace friedrichs {

/// Model with the `mu0` token resolved against the configured grid.
struct ResolvedModel {
  Symbol symbol;          // carries the resolved mu
  double mu = 0.0;        // resolved coupling
  double mu0 = 0.0;       // computed threshold coupling (0 when not needed)
  std::string comment;    // config echo block for output files
};

ResolvedModel resolve_model(const RunConfig& cfg, int workers);

/// CLI backends.  Each writes its output files under cfg.out_dir with the
/// configured prefix, logs one summary line per major step, and returns a
/// process exit code.
int run_scan(const RunConfig& cfg, int workers, std::ostream& log);
int run_threshold_report(const RunConfig& cfg, int workers, std::ostream& log);
int run_classify(const RunConfig& cfg, int workers, std::ostream& log);
int run_verify(const RunConfig& cfg, int workers, std::uint64_t seed, std::ostream& log);
int run_oracle(const RunConfig& cfg, int workers, std::uint64_t seed, std::ostream& log);

}  // namespace friedrichs

#endif
