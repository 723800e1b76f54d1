#pragma once

#include "mhdlab/spectral_field.hpp"

#include <cstdint>
#include <random>

namespace mhdlab {

/// Deterministic generator for sample `index` of a family seeded by `seed`.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index);

/// Random mean-free real field with Gaussian coefficients on kmin <= |k| <= kmax,
/// scaled to root-mean-square `amplitude` (pointwise Euclidean magnitude for
/// vectors). With `solenoidal` the vector field is Leray-projected first.
SpectralField random_band(const Grid& g, int components, std::mt19937_64& rng, double kmin,
                          double kmax, double amplitude, bool solenoidal = false);

/// Root-mean-square of the pointwise magnitude, ‖f‖_{L²}/|box|^{1/2}.
double rms(const SpectralField& f);

/// Periodized Gaussian bump exp(-|x - c|²/w²) with its mean removed. Only the
/// first d entries of `center` are used.
SpectralField gaussian_bump(const Grid& g, const Eigen::Array3d& center, double width,
                           double amplitude = 1.0);

/// gaussian_bump centered in the box.
SpectralField gaussian_pulse(const Grid& g, double width, double amplitude = 1.0);

}  // namespace mhdlab
