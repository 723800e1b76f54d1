#pragma once

#include "mhdlab/config.hpp"
#include "mhdlab/report.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace mhdlab {

struct ExperimentOutcome {
  /// 0 on success, 3 after a numerical abort (partial outputs are written).
  int exit_code = 0;
  std::vector<std::filesystem::path> files;
  /// One-line JSON summary, also written as summary-<hash>.json.
  std::string summary;
};

/// Runs cfg.experiment and writes every output file under `out_dir`. Files
/// carry the config hash in their name; `threads` only affects wall time.
/// ConfigError and std::invalid_argument signal invalid input.
ExperimentOutcome run_experiment(const RunConfig& cfg, const std::filesystem::path& out_dir, int threads);

/// Records of a diagnostics series with nested norms flattened to
/// "norm_<key>" columns.
Report diagnostics_report(const std::vector<Diagnostics>& series, const std::string& config_hash);

/// Output directory: $MHDLAB_OUTPUT_ROOT (default ".") joined with `output`.
std::filesystem::path output_directory(const std::string& output);

}  // namespace mhdlab
