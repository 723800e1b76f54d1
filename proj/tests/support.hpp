#pragma once

#include "mhdlab/spectral_field.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace mhdlab::testing {

/// Random real field with Gaussian coefficients on 0 < |k| <= kmax (plus a
/// random mean when `with_mean`), dealiased.
inline SpectralField random_field(const Grid& g, int components, std::mt19937_64& rng,
                                  double kmax = std::numeric_limits<double>::infinity(),
                                  bool with_mean = true) {
  std::normal_distribution<double> n01;
  SpectralField f(g, components);
  for (int c = 0; c < components; ++c) {
    for (Eigen::Index m = 0; m < g.modes(); ++m) {
      if (g.kabs()(m) > kmax) continue;
      f.coeffs()(m, c) = Complex(n01(rng), n01(rng));
    }
  }
  if (!with_mean) f.coeffs().row(0).setZero();
  return dealias(make_real(std::move(f)));
}

/// Real single Fourier mode amplitude·cos(n·x) on the box (n integer lattice vector).
inline SpectralField cosine_mode(const Grid& g, Eigen::Array3i n, double amplitude = 1.0) {
  SpectralField f(g, 1);
  f.coeffs()(g.mode_index(n), 0) += 0.5 * amplitude;
  f.coeffs()(g.mode_index(-n), 0) += 0.5 * amplitude;
  return f;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline double rel_l2(const SpectralField& a, const SpectralField& b) {
  return (a - b).l2_norm() / std::max(b.l2_norm(), 1e-300);
}

}  // namespace mhdlab::testing
