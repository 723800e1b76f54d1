#pragma once

#include "mhdlab/spectral_field.hpp"

#include <functional>
#include <optional>

namespace mhdlab {

/// Acoustic pair of scalar fields for
///   ∂_t b + (c/ε)ΛΨ = F,   ∂_t Ψ - (c/ε)Λb = G.
/// For the compressible unknowns Ψ = Λ^{-1}div 𝒫⊥u / c.
struct AcousticState {
  SpectralField b;
  SpectralField psi;
  double eps = 1.0;
};

struct AcousticForcing {
  SpectralField F;
  SpectralField G;
};

/// ‖b‖²_{L²} + ‖Ψ‖²_{L²}.
double acoustic_energy(const AcousticState& st);

/// Exact flow over time t with sound speed c. Per mode the free flow is the
/// rotation by θ = c|k|t/ε; constant forcing is added by the exact Duhamel
/// integral. Throws for ε <= 0, t < 0 or c <= 0.
AcousticState acoustic_flow(const AcousticState& st, double t,
                            const std::optional<AcousticForcing>& forcing = std::nullopt,
                            double speed = 1.0);

/// Time-dependent forcing: `substeps` exact sub-flows, each with the forcing
/// frozen at the sub-interval midpoint.
AcousticState acoustic_flow(const AcousticState& st, double t,
                            const std::function<AcousticForcing(double)>& forcing, int substeps,
                            double speed = 1.0);

}  // namespace mhdlab
