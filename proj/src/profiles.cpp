#include "mhdlab/profiles.hpp"

#include "mhdlab/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace mhdlab {

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

double rms(const SpectralField& f) { return f.l2_norm() / std::sqrt(f.grid().volume()); }

SpectralField random_band(const Grid& g, int components, std::mt19937_64& rng, double kmin,
                          double kmax, double amplitude, bool solenoidal) {
  if (!(kmax >= kmin)) throw std::invalid_argument("random_band: kmax < kmin");
  std::normal_distribution<double> n01;
  SpectralField f(g, components);
  for (int c = 0; c < components; ++c) {
    for (Eigen::Index m = 1; m < g.modes(); ++m) {
      const double k = g.kabs()(m);
      // Draw for every mode so the stream does not depend on the band.
      const double re = n01(rng), im = n01(rng);
      if (k < kmin || k > kmax) continue;
      f.coeffs()(m, c) = Complex(re, im);
    }
  }
  f = dealias(make_real(std::move(f)));
  if (solenoidal) {
    if (!f.is_vector()) throw std::invalid_argument("random_band: solenoidal needs a vector field");
    f = leray_project(f);
  }
  const double r = rms(f);
  if (r > 0.0) f *= amplitude / r;
  return f;
}

SpectralField gaussian_bump(const Grid& g, const Eigen::Array3d& center, double width,
                           double amplitude) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian bump: width must be positive");
  const double L = g.length();
  const int d = g.dim();
  SpectralField f = sample(g, 1, [&](const double* x, double* out) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) {
      // Nearest periodic image of the center.
      double dx = x[a] - center(a);
      dx -= L * std::round(dx / L);
      r2 += dx * dx;
    }
    out[0] = amplitude * std::exp(-r2 / (width * width));
  });
  f.coeffs()(0, 0) = 0.0;
  return f;
}

SpectralField gaussian_pulse(const Grid& g, double width, double amplitude) {
  return gaussian_bump(g, Eigen::Array3d::Constant(0.5 * g.length()), width, amplitude);
}

}  // namespace mhdlab
