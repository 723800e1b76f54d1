#include "mhdlab/initial_data.hpp"

#include "mhdlab/operators.hpp"
#include "mhdlab/profiles.hpp"

#include <cmath>

namespace mhdlab {

namespace {

Eigen::Array3d at(const Grid& g, double x, double y, double z) {
  return Eigen::Array3d(x, y, z) * g.length();
}

// Solenoidal part of a vector of bumps placed at `centers`, one per axis.
SpectralField solenoidal_bumps(const Grid& g, const std::vector<Eigen::Array3d>& centers,
                               double width, double amplitude) {
  SpectralField v(g, g.dim());
  for (int a = 0; a < g.dim(); ++a) {
    const double sign = a % 2 == 0 ? 1.0 : -1.0;
    v.coeffs().col(a) = gaussian_bump(g, centers[a], width, sign * amplitude).coeffs().col(0);
  }
  return leray_project(v);
}

}  // namespace

SpectralField taylor_green(const Grid& g, double amplitude) {
  if (g.dim() != 2) throw std::invalid_argument("taylor_green is a 2D profile");
  const double k = g.dk();
  return sample(g, 2, [&](const double* x, double* o) {
    o[0] = amplitude * std::sin(k * x[0]) * std::cos(k * x[1]);
    o[1] = -amplitude * std::cos(k * x[0]) * std::sin(k * x[1]);
  });
}

double taylor_green_decay(const Grid& g, double mu, double t) {
  return std::exp(-2.0 * mu * g.dk() * g.dk() * t);
}

MHDState symmetric_uB(const Grid& g, std::uint64_t seed, double kmin, double kmax,
                      double amplitude) {
  std::mt19937_64 rng = stream_rng(seed, 0);
  const SpectralField v = random_band(g, g.dim(), rng, kmin, kmax, amplitude, true);
  return MHDState::incompressible(v, v);
}

MHDState acoustic_pulse(const Grid& g, double width, double eps, double amplitude) {
  return MHDState::scaled(gaussian_pulse(g, width, amplitude), SpectralField(g, g.dim()),
                          SpectralField(g, g.dim()), eps);
}

LowMachData ill_prepared_data(const Grid& g, double width_fraction, double magnetic_amplitude) {
  if (!(width_fraction > 0.0 && width_fraction < 0.25)) {
    throw std::invalid_argument("ill-prepared data: width fraction must lie in (0, 1/4)");
  }
  const double w = width_fraction * g.length();
  LowMachData out{gaussian_bump(g, at(g, 0.5, 0.5, 0.5), w), SpectralField(g, g.dim()),
                  SpectralField(g, g.dim())};
  // Potential part: w∇ of a bump has unit size.
  out.u0 = w * grad(gaussian_bump(g, at(g, 0.45, 0.55, 0.5), w));
  out.u0 += solenoidal_bumps(g, {at(g, 0.4, 0.5, 0.5), at(g, 0.6, 0.45, 0.5), at(g, 0.5, 0.5, 0.55)},
                             w, 1.0);
  out.H0 = solenoidal_bumps(g, {at(g, 0.55, 0.6, 0.5), at(g, 0.45, 0.4, 0.5), at(g, 0.5, 0.5, 0.45)},
                            w, magnetic_amplitude);
  return out;
}

}  // namespace mhdlab
