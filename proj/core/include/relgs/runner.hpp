#pragma once

#include <string>
#include <vector>

#include "relgs/config.hpp"
#include "relgs/minimizer.hpp"

namespace relgs {

/// Fully resolved run configuration: problem + grid + solver/scan options,
/// output paths, and the raw config for hashing.
struct RunConfig {
  Problem problem;
  Grid grid;
  SolveOptions solve;
  ScanOptions scan;
  double scan_mass_lo = 0.0;
  double scan_mass_hi = 0.0;
  std::string output_dir = ".";
  std::uint64_t seed = 1;
  std::size_t corpus_count = 20;
  bool strict_deterministic = true;
  int thread_cap = 1;
  Config raw;
};

/// Parses and validates; throws ConfigError with the violated admissibility
/// conditions spelled out.
RunConfig load_run_config(const std::string& path);

/// RELGS_THREADS, clamped to [1, 64]; 1 when unset or unparsable.
int thread_cap_from_env();

// Exit codes: 0 success/converged, 1 verification failure, 2 collapsing,
// 3 stalled, 64 configuration error.
int cmd_solve(const std::string& config_path);
int cmd_scan_mass(const std::string& config_path);
int cmd_verify(const std::string& config_path,
               const std::vector<std::string>& checks);
int cmd_extend_check(const std::string& config_path);
int cmd_rearrange(const std::string& snapshot_path,
                  const std::string& output_path);

/// Names accepted by cmd_verify.
const std::vector<std::string>& known_checks();

}  // namespace relgs
