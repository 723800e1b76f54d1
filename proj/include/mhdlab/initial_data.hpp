#pragma once

#include "mhdlab/mhd.hpp"

#include <cstdint>

namespace mhdlab {

/// 2D Taylor–Green velocity A(sin κx cos κy, −cos κx sin κy) with κ = 2π/L.
/// Steady under the Euler terms, so under viscosity it decays as
/// exp(−2μκ²t).
SpectralField taylor_green(const Grid& g, double amplitude = 1.0);
double taylor_green_decay(const Grid& g, double mu, double t);

/// Incompressible state with v = B equal to one seeded random solenoidal
/// band-limited field of rms `amplitude`.
MHDState symmetric_uB(const Grid& g, std::uint64_t seed, double kmin, double kmax,
                      double amplitude = 1.0);

/// Scaled state with b₀ a centered Gaussian and u₀ = H₀ = 0.
MHDState acoustic_pulse(const Grid& g, double width, double eps, double amplitude = 1.0);

/// Ill-prepared data (b₀, u₀, H₀) built from Gaussian bumps of width
/// L·width_fraction at fixed positions: b₀ and the potential part of u₀ are of
/// unit size, u₀ also carries a solenoidal part and H₀ is solenoidal.
struct LowMachData {
  SpectralField b0;
  SpectralField u0;
  SpectralField H0;
};
LowMachData ill_prepared_data(const Grid& g, double width_fraction = 1.0 / 16.0,
                              double magnetic_amplitude = 0.5);

}  // namespace mhdlab
