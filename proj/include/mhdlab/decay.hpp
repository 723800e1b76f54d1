#pragma once

#include <vector>

namespace mhdlab {

/// Radial acoustic pulse b₀ = Gaussian of the given width (mean removed),
/// Ψ₀ = 0, evolved by the exact acoustic flow on a box of side L.
struct DecayConfig {
  int dim = 2;
  int n = 1024;
  double length = 256.0;
  double width = 1.0;
  double eps = 1.0;
  double speed = 1.0;
  double amplitude = 1.0;
  /// End of the sampled window; 0 selects the latest time before the fronts
  /// get within `margin` widths of the half box.
  double horizon = 0.0;
  /// Front radius (in widths) where sampling starts.
  double start_radius = 6.0;
  double margin = 6.0;
  int samples = 24;
};

struct DecayFit {
  double gamma = 0.0;        // fitted exponent in ‖b(t)‖_∞ ~ t^{-γ}
  double intercept = 0.0;    // log-amplitude at t = 1
  double residual = 0.0;     // RMS of the log-log fit
  double theoretical = 0.0;  // (d - 1)/2
  std::vector<double> times;
  std::vector<double> amplitudes;
};

/// Latest time before the outgoing front of a pulse of diameter 2·margin·width
/// meets its periodic image: ε(L/2 - margin·width)/c.
double wraparound_time(const DecayConfig& cfg);

/// Smallest power-of-two multiple of the width whose box keeps `horizon`
/// before wraparound.
double auto_box_length(double width, double horizon, double eps, double speed, double margin);

/// Samples ‖b(t)‖_{L^∞} at log-spaced times and fits a power law.
/// Throws "boundary contamination" when the horizon reaches the wraparound
/// time and "degenerate fit" when the signal vanishes.
DecayFit dispersive_decay_experiment(const DecayConfig& cfg);

}  // namespace mhdlab
