#pragma once

// Subcommands of the `qweb` command-line tool.

#include <ostream>
#include <string>

#include <json.hpp>

#include "qweb/params.hpp"

namespace qweb::cli {

enum ExitCode : int { kSuccess = 0, kNumericFailure = 1, kConfigError = 2 };

/// Effective settings of one run. Zero-valued `auto` fields are resolved from
/// the physics (default grid, fold = mu, ...).
struct RunConfig {
  Params params;

  // quantum selection
  int ladder = 0;
  int cell = 1;
  std::string state = "upper";  // upper | lower | all
  int fock = -1;                // >= 0 replaces the QE state by |fock>
  int s = 0;
  int edge_count = 3;

  // grid (0 = default)
  double r_max = 0.0;
  int n_r = 400;
  int n_phi = 0;

  // classical ensemble
  int periods = 1100;
  int steps_per_period = 256;
  std::string ic_file;
  int ic_rings = 12;
  int ic_angles = 8;
  double ic_r_min = 0.5;
  int bins = 128;
  bool check_reversibility = false;

  // report thresholds
  int fold = 0;        // 0 = mu
  int wrong_fold = 0;  // 0 = mu - 1 (mu >= 3) or mu + 1
  double eps_classical = 0.05;
  double max_classical_error = 0.05;
  double min_ratio = 5.0;
  double radius_tol = 0.02;
  double angle_tol_deg = 5.0;
  double parity_tol = 0.01;

  // output
  std::string out;
  std::string format = "json";  // csv | json | pgm
  int pgm_size = 512;
  int workers = 0;

  void validate() const;
  int effective_fold() const;
  int effective_wrong_fold() const;
  nlohmann::json to_json() const;
};

int cmd_cells(const RunConfig& config, std::ostream& out);
int cmd_qe(const RunConfig& config, std::ostream& out);
int cmd_husimi(const RunConfig& config, std::ostream& out);
int cmd_classical(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_report(const RunConfig& config, std::ostream& out);

/// Parses argv (flags and an optional key=value --config file, flags win),
/// dispatches the subcommand and maps errors to exit codes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qweb::cli
