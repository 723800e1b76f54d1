#include "mhdlab/decay.hpp"

#include "mhdlab/acoustic.hpp"
#include "mhdlab/profiles.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace mhdlab {

double wraparound_time(const DecayConfig& cfg) {
  return cfg.eps * (0.5 * cfg.length - cfg.margin * cfg.width) / cfg.speed;
}

double auto_box_length(double width, double horizon, double eps, double speed, double margin) {
  double L = width;
  while (eps * (0.5 * L - margin * width) / speed <= horizon) L *= 2.0;
  return L;
}

DecayFit dispersive_decay_experiment(const DecayConfig& cfg) {
  if (!(cfg.eps > 0.0)) throw std::invalid_argument("decay experiment requires eps > 0");
  if (cfg.samples < 3) throw std::invalid_argument("decay experiment needs at least 3 samples");
  const double t_wrap = wraparound_time(cfg);
  const double t_start = cfg.eps * cfg.start_radius * cfg.width / cfg.speed;
  const double horizon = cfg.horizon > 0.0 ? cfg.horizon : t_wrap;
  if (horizon > t_wrap || t_wrap <= 0.0) throw std::domain_error("boundary contamination");
  if (!(horizon > t_start)) throw std::invalid_argument("decay horizon ends before sampling starts");

  const Grid g(cfg.dim, cfg.n, cfg.length);
  const AcousticState init{gaussian_pulse(g, cfg.width, cfg.amplitude), SpectralField(g, 1), cfg.eps};

  DecayFit fit;
  fit.theoretical = 0.5 * (cfg.dim - 1);
  const double ratio = std::log(horizon / t_start);
  for (int i = 0; i < cfg.samples; ++i) {
    const double t = t_start * std::exp(ratio * i / (cfg.samples - 1));
    const AcousticState st = acoustic_flow(init, t, std::nullopt, cfg.speed);
    fit.times.push_back(t);
    fit.amplitudes.push_back(linf_norm(st.b));
  }
  for (double a : fit.amplitudes) {
    if (!(a > 0.0) || !std::isfinite(a)) throw std::domain_error("degenerate fit");
  }
  const Eigen::Index n = cfg.samples;
  Eigen::MatrixXd X(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    X(i, 0) = 1.0;
    X(i, 1) = std::log(fit.times[i]);
    y(i) = std::log(fit.amplitudes[i]);
  }
  const Eigen::Vector2d coef = X.colPivHouseholderQr().solve(y);
  fit.intercept = coef(0);
  fit.gamma = -coef(1);
  fit.residual = std::sqrt((X * coef - y).squaredNorm() / n);
  return fit;
}

}  // namespace mhdlab
