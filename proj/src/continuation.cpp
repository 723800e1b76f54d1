#include "mhdlab/continuation.hpp"

#include <cmath>

namespace mhdlab {

namespace {

// Time τ into a segment of length dt at which ∫ of the linear interpolant of
// (g0, g1) reaches `remaining`.
double crossing(double g0, double g1, double dt, double remaining) {
  const double a = (g1 - g0) / (2.0 * dt);
  const double disc = g0 * g0 + 4.0 * a * remaining;
  return 2.0 * remaining / (g0 + std::sqrt(std::max(disc, 0.0)));
}

}  // namespace

std::string to_string(ContinuationStatus s) {
  switch (s) {
    case ContinuationStatus::continuable: return "continuable";
    case ContinuationStatus::vacuum: return "vacuum";
    case ContinuationStatus::gradient_blowup_u: return "gradient_blowup_u";
    case ContinuationStatus::gradient_blowup_H: return "gradient_blowup_H";
  }
  return "unknown";
}

ContinuationReport continuation_monitor(const std::vector<MonitorSample>& samples,
                                        const MonitorThresholds& th) {
  if (samples.size() < 2) throw std::invalid_argument("continuation monitor needs >= 2 samples");
  ContinuationReport r;
  r.inf_density = samples.front().inf_density;
  if (r.inf_density <= th.density_floor) {
    r.status = ContinuationStatus::vacuum;
    r.time = samples.front().t;
    return r;
  }
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const MonitorSample& p = samples[i - 1];
    const MonitorSample& q = samples[i];
    const double dt = q.t - p.t;
    const double du = 0.5 * dt * (p.grad_u + q.grad_u);
    const double dH = 0.5 * dt * (p.grad_H + q.grad_H);
    const bool cross_u = r.integral_u + du > th.gradient_integral;
    const bool cross_H = r.integral_H + dH > th.gradient_integral;
    if (cross_u || cross_H) {
      const double tu = cross_u ? crossing(p.grad_u, q.grad_u, dt, th.gradient_integral - r.integral_u)
                                : dt;
      const double tH = cross_H ? crossing(p.grad_H, q.grad_H, dt, th.gradient_integral - r.integral_H)
                                : dt;
      const bool u_first = cross_u && (!cross_H || tu <= tH);
      r.status = u_first ? ContinuationStatus::gradient_blowup_u
                         : ContinuationStatus::gradient_blowup_H;
      r.time = p.t + (u_first ? tu : tH);
      r.integral_u += du;
      r.integral_H += dH;
      return r;
    }
    r.integral_u += du;
    r.integral_H += dH;
    r.inf_density = std::min(r.inf_density, q.inf_density);
    r.time = q.t;
    if (q.inf_density <= th.density_floor) {
      r.status = ContinuationStatus::vacuum;
      return r;
    }
  }
  return r;
}

ContinuationReport continuation_monitor(const std::vector<MHDState>& trajectory,
                                        const MonitorThresholds& th) {
  std::vector<MonitorSample> samples;
  samples.reserve(trajectory.size());
  for (const MHDState& st : trajectory) {
    const double s = static_cast<double>(st.grid().dim()) / 2.0;
    samples.push_back({st.t, gradient_besov_norm(st.u, s), gradient_besov_norm(st.H, s),
                       inf_density(st)});
  }
  return continuation_monitor(samples, th);
}

}  // namespace mhdlab
