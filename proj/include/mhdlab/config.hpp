#pragma once

#include "mhdlab/audit.hpp"
#include "mhdlab/decay.hpp"
#include "mhdlab/lowmach.hpp"
#include "mhdlab/mhd.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mhdlab {

/// Invalid configuration. The message starts with the dotted key path.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Experiment { run, sweep, audit, decay, norms };

std::string to_string(Experiment e);
Experiment parse_experiment(const std::string& name);

struct GridConfig {
  int d = 2;
  int N = 64;
  double L = 6.283185307179586;
};

/// Named initial data. Profiles and the keys they read:
///   taylor_green:   amplitude (d = 2)
///   symmetric_uB:   amplitude, seed, kmin, kmax
///   random_band:    amplitude, seed, kmin, kmax, solenoidal
///   acoustic_pulse: amplitude, width
///   ill_prepared:   width_fraction, magnetic_amplitude
/// kmin and kmax are in units of the lattice spacing 2π/L.
struct InitialDataConfig {
  std::string profile = "random_band";
  double amplitude = 0.1;
  std::uint64_t seed = 0;
  double kmin = 1.0;
  double kmax = 4.0;
  bool solenoidal = false;
  double width = 0.5;
  double width_fraction = 1.0 / 16.0;
  double magnetic_amplitude = 0.5;
};

struct SweepSection {
  std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
  double p = 4.0;
};

struct AuditSection {
  std::string estimate = "transport_2.1";
  int samples = 10;
  double horizon = 0.1;
  int steps = 50;
  double s = 0.0;
  double alpha = 0.5;
  double kappa = 0.5;
  double gronwall_constant = 1.0;
  double band = 6.0;
  double data_amplitude = 1.0;
  double coefficient_amplitude = 0.5;
  double forcing_amplitude = 0.5;
  std::string mollifier = "sharp";
  bool rescale = true;
};

struct DecaySection {
  double width = 1.0;
  double speed = 1.0;
  double amplitude = 1.0;
  double horizon = 0.0;
  double start_radius = 6.0;
  double margin = 6.0;
  int samples = 24;
};

struct RunConfig {
  Experiment experiment = Experiment::run;
  GridConfig grid;
  PhysicalParams physics;
  Regime regime = Regime::compressible;
  /// Mach number of the scaled regime and of the decay experiment.
  double eps = 0.1;
  InitialDataConfig initial_data;
  StepperConfig stepper;
  /// Stride (in steps) between snapshot files; 0 writes none.
  int snapshot_stride = 0;
  double horizon = 0.5;
  /// Defaults to 1/6 (d = 2) or 1/4 (d = 3).
  double alpha = 1.0 / 6.0;
  SweepSection sweep;
  AuditSection audit;
  DecaySection decay;
  std::string output = "out";
  std::uint64_t seed = 0;

  Grid make_grid() const { return Grid(grid.d, grid.N, grid.L); }
};

/// Parses, fills defaults and validates. Unknown keys are rejected.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Every field, keys sorted, numbers in shortest round-trip form. Reloading
/// it yields the same config.
std::string canonical_config(const RunConfig& cfg);
/// 16 hex digits of the 64-bit FNV-1a hash of the canonical text.
std::string config_hash(const RunConfig& cfg);

/// State built from the initial-data recipe in the configured regime.
MHDState make_initial_state(const RunConfig& cfg);
SweepConfig make_sweep_config(const RunConfig& cfg);
AuditConfig make_audit_config(const RunConfig& cfg);
DecayConfig make_decay_config(const RunConfig& cfg);

}  // namespace mhdlab
