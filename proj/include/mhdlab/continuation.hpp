#pragma once

#include "mhdlab/mhd.hpp"

#include <limits>
#include <vector>

namespace mhdlab {

enum class ContinuationStatus { continuable, vacuum, gradient_blowup_u, gradient_blowup_H };

std::string to_string(ContinuationStatus s);

struct MonitorSample {
  double t = 0.0;
  double grad_u = 0.0;  // ‖∇u‖_{Ḃ^{d/2}_{2,1}}
  double grad_H = 0.0;
  double inf_density = 1.0;  // inf(1 + a)
};

struct MonitorThresholds {
  double gradient_integral = std::numeric_limits<double>::infinity();
  double density_floor = 0.1;
};

struct ContinuationReport {
  ContinuationStatus status = ContinuationStatus::continuable;
  /// Time of the first violation, or the last sample time.
  double time = 0.0;
  double integral_u = 0.0;
  double integral_H = 0.0;
  double inf_density = 1.0;
};

/// Accumulates ∫‖∇u‖ and ∫‖∇H‖ by the trapezoid rule and tracks inf(1 + a).
/// A gradient crossing time is the exact crossing of the piecewise-linear
/// integrand; a vacuum time is the first sample at or below the floor.
/// Needs at least two samples.
ContinuationReport continuation_monitor(const std::vector<MonitorSample>& samples,
                                        const MonitorThresholds& th = {});
ContinuationReport continuation_monitor(const std::vector<MHDState>& trajectory,
                                        const MonitorThresholds& th = {});

}  // namespace mhdlab
