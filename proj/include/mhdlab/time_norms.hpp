#pragma once

#include "mhdlab/besov.hpp"

#include <map>
#include <vector>

namespace mhdlab {

/// Time-mixed norms of a field sampled at increasing times t_0 < t_1 < ...:
///   L̃^∞_t(Ḃ^s):  Σ_j 2^{js} max_n ‖Δ̇_j f(t_n)‖_{L²}
///   L^∞_t(Ḃ^s):  max_n Σ_j 2^{js} ‖Δ̇_j f(t_n)‖_{L²}
///   L¹_t(Ḃ^σ):   trapezoid rule over the samples of Σ_j 2^{jσ} ‖Δ̇_j f‖_{L²}
class TimeNormAccumulator {
 public:
  explicit TimeNormAccumulator(Mollifier m = Mollifier::sharp) : mollifier_(m) {}

  void record(double t, const SpectralField& f);
  void record(double t, const std::map<int, double>& shell_norms);

  std::size_t samples() const { return times_.size(); }
  double chemin_lerner_sup(double s) const;
  double sup(double s) const;
  double integral(double s) const;
  /// (∫ ‖f‖^p_{Ḃ^s} dt)^{1/p} by the trapezoid rule.
  double lp(double s, double p) const;

 private:
  Mollifier mollifier_;
  std::vector<double> times_;
  std::vector<std::map<int, double>> shells_;
};

/// Trapezoid rule for samples y(t_n).
double trapezoid(const std::vector<double>& t, const std::vector<double>& y);

}  // namespace mhdlab
