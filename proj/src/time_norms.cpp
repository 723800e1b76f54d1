#include "mhdlab/time_norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mhdlab {

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size()) throw std::invalid_argument("trapezoid: size mismatch");
  double sum = 0.0;
  for (std::size_t n = 1; n < t.size(); ++n) sum += 0.5 * (t[n] - t[n - 1]) * (y[n] + y[n - 1]);
  return sum;
}

void TimeNormAccumulator::record(double t, const SpectralField& f) {
  record(t, shell_norms(f, Lebesgue::two, mollifier_));
}

void TimeNormAccumulator::record(double t, const std::map<int, double>& shell_norms) {
  if (!times_.empty() && !(t > times_.back())) {
    throw std::invalid_argument("time samples must increase");
  }
  times_.push_back(t);
  shells_.push_back(shell_norms);
}

double TimeNormAccumulator::chemin_lerner_sup(double s) const {
  std::map<int, double> peak;
  for (const auto& shells : shells_) {
    for (const auto& [j, n] : shells) peak[j] = std::max(peak[j], n);
  }
  return besov_norm(peak, s);
}

double TimeNormAccumulator::sup(double s) const {
  double out = 0.0;
  for (const auto& shells : shells_) out = std::max(out, besov_norm(shells, s));
  return out;
}

double TimeNormAccumulator::integral(double s) const {
  std::vector<double> y;
  y.reserve(shells_.size());
  for (const auto& shells : shells_) y.push_back(besov_norm(shells, s));
  return trapezoid(times_, y);
}

double TimeNormAccumulator::lp(double s, double p) const {
  std::vector<double> y;
  y.reserve(shells_.size());
  for (const auto& shells : shells_) y.push_back(std::pow(besov_norm(shells, s), p));
  return std::pow(trapezoid(times_, y), 1.0 / p);
}

}  // namespace mhdlab
