#pragma once

#include "mhdlab/initial_data.hpp"
#include "mhdlab/mhd.hpp"

#include <array>
#include <limits>
#include <string>
#include <vector>

namespace mhdlab {

/// Convergence functionals at one saved time, cumulative over [0, t]. Index 0
/// of each array is β = 0, index 1 is β = α. With w = 𝒫u^ε − v, B^ε = H^ε − B:
///   W_β = ‖w, B^ε‖_{L^∞_t(Ḃ^{d/2−1+β})} + ‖w, B^ε‖_{L¹_t(Ḃ^{d/2+1+β})}
///   X_β = ‖b‖_{L¹_t(B̃^{d/2+β,1}_ε)} + ‖b‖_{L^∞_t(B̃^{d/2+β,∞}_ε)}
///         + ‖𝒫⊥u‖_{L¹_t(Ḃ^{d/2+1+β})} + ‖𝒫⊥u‖_{L^∞_t(Ḃ^{d/2−1+β})}
///   Y_β = ‖b, 𝒫⊥u‖_{L^p_t(Ḃ^{β−1+1/p}_{∞,1})}
///   V_β = W_β with (w, B^ε) replaced by (v, B)
/// Sup entries are maxima over the samples, integrals use the trapezoid rule.
struct FunctionalSample {
  double t = 0.0;
  std::array<double, 2> W{}, X{}, Y{}, V{};
  /// The pieces of W: sup and integral for w and for B^ε separately.
  std::array<double, 2> sup_w{}, sup_B{}, int_w{}, int_B{};
};

struct FunctionalSeries {
  double eps = 0.0;
  double alpha = 0.0;
  double p = 4.0;
  std::vector<FunctionalSample> samples;

  const FunctionalSample& final() const { return samples.back(); }
  std::string to_ndjson() const;
};

/// Largest admissible α: 1/6 for d = 2, below 1/2 for d = 3.
bool admissible_alpha(int dim, double alpha);
double default_alpha(int dim);
/// 2α/(2 + d + 2α).
double theoretical_order(int dim, double alpha);

/// traj_eps holds scaled-regime states, traj_limit incompressible ones, saved
/// at the same times on the same grid. Throws std::invalid_argument otherwise,
/// for an inadmissible α, or for p ≤ 1.
FunctionalSeries compute_functionals(const std::vector<MHDState>& traj_eps,
                                     const std::vector<MHDState>& traj_limit, double alpha,
                                     double p = 4.0);

struct RatePoint {
  double eps;
  double error;
};

struct RateFit {
  std::vector<RatePoint> points;
  double order = 0.0;
  double intercept = 0.0;
  /// RMS of the log-space residuals.
  double residual = 0.0;
  double theoretical_order = std::numeric_limits<double>::quiet_NaN();

  std::string to_json() const;
};

/// Least squares of log error = intercept + order·log ε. Needs at least three
/// points with positive errors and ε spanning a factor of 4.
RateFit fit_rate(const std::vector<RatePoint>& points,
                 double theoretical = std::numeric_limits<double>::quiet_NaN());

struct SweepConfig {
  explicit SweepConfig(LowMachData data) : init(std::move(data)) {}

  /// Geometric, at least three entries.
  std::vector<double> eps;
  LowMachData init;
  PhysicalParams prm;
  StepperConfig stepper;
  double horizon = 0.5;
  double alpha = 1.0 / 6.0;
  double p = 4.0;
  int threads = 0;
};

struct SweepEntry {
  double eps = 0.0;
  RunStatus status = RunStatus::completed;
  std::string reason;
  /// Empty unless the run completed.
  FunctionalSeries functionals;

  bool valid() const { return status == RunStatus::completed; }
  double sup_W0() const;
  double sup_Walpha() const;
  double int_W0() const;
  /// Y_α, the quantity of the acoustic decay statement.
  double Y_norm() const;
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  /// V_0 and V_α of the limit solution over the horizon.
  std::array<double, 2> V{};
  double theoretical_order = 0.0;

  /// (ε, sup_t ‖𝒫u^ε − v‖_{Ḃ^{d/2−1}}) over the valid entries.
  std::vector<RatePoint> velocity_errors() const;
  /// (ε, sup_t ‖H^ε − B‖_{Ḃ^{d/2−1}}) over the valid entries.
  std::vector<RatePoint> magnetic_errors() const;

  /// Header plus one line per ε: eps,sup_W0,sup_Walpha,int_W0,Y_norm,status.
  std::string to_csv() const;
  std::string to_ndjson() const;
};

/// Integrates the limit system once from (𝒫u₀, H₀) and the scaled system
/// from (b₀, u₀, H₀) for every ε, concurrently. A failed ε run is recorded
/// and skipped; a failed limit run throws NumericalAbort.
SweepResult run_sweep(const SweepConfig& cfg);

}  // namespace mhdlab
