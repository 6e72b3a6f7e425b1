#ifndef FRIEDRICHS_CONFIG_HPP
#define FRIEDRICHS_CONFIG_HPP

#include <string>
#include <utility>
#include <vector>

#include "friedrichs/symbol.hpp"

namespace friedrichs {

/// Parsed and validated run configuration (line-oriented `key = value` format
/// with `[section]` headers; see docs/formats.md).
struct RunConfig {
  // [model]
  std::string dispersion_preset = "cubic-nn";  // empty when site lines are given
  std::vector<std::pair<Site, double>> sites;
  double dispersion_constant = 0.0;
  std::string phi_kind = "const";  // const | sin | table
  double phi_const = 1.0;
  int phi_sin_component = 1;
  std::string phi_table_path;
  std::vector<FormFactor::Term> phi_table_terms;
  double phi_table_c0 = 0.0;
  bool mu_is_mu0 = false;
  double mu_value = 1.0;  // literal mu, or the multiplier in `mu0*<scale>`

  // [grid]
  int grid_n = 64;
  int grid_levels = 2;

  // [scan]
  int scan_p_per_axis = 9;
  std::vector<double> mu_ladder = {1.0};  // multipliers applied to the resolved mu

  // [threshold]
  double delta = 1.0;
  int assumption_p_n = 21;

  // [output]
  std::string out_dir = ".";
  std::string prefix = "run";

  /// Build the model (mu still unresolved when mu_is_mu0).
  ModelSpec to_model_spec() const;
};

/// Parse the documented config text; throws ConfigError with a line number on
/// malformed lines and with the offending key on semantic violations.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

/// Render every (defaulted or explicit) setting back as config lines; used to
/// echo the full resolved configuration into each output file.
std::string dump_config(const RunConfig& cfg);

}  // namespace friedrichs

#endif
