#pragma once

#include "mhdlab/mhd.hpp"

namespace mhdlab {

/// The estimates hold for some c, κ the analysis does not quantify, so every
/// bound is relative to the configured pair.
struct LifespanConstants {
  double c = 0.1;
  double kappa = 0.5;
};

struct LifespanBound {
  double T = 0.0;
  /// A₀^α = ‖a₀‖_{Ḃ^{d/2}} + ‖a₀‖_{Ḃ^{d/2+α}}; U₀^α and H₀^α use d/2−1 and d/2−1+α.
  double A = 0.0;
  double U = 0.0;
  double H = 0.0;
  /// Supremum allowed by each condition on its own (infinity when vacuous).
  double t_nonlinear = 0.0;  // T ≤ c/((1+A)²((1+H²+U²)H² + U))
  double t_density = 0.0;    // T ≤ c/(1+A)^{2/α}
  double t_heat = 0.0;       // shell sum of the heat-lifted data ≤ threshold
  double threshold = 0.0;
};

/// Compressible regime:
///   Σ_j 2^{j(d/2−1+α)}(1 − e^{−κν̄4^jT})‖Δ̇_j u₀‖ ≤ c/((1+A)²(1+(1+U)H²))
/// together with the two explicit conditions. Incompressible regime: only
///   Σ_j 2^{j(d/2−1)}(1 − e^{−κν̲4^jT})^{1/2}(‖Δ̇_j v₀‖ + ‖Δ̇_j B₀‖) ≤ c.
/// Shell sums are monotone in T; their suprema are found by bisection.
LifespanBound lifespan_lower_bound(const MHDState& init, const PhysicalParams& prm, double alpha,
                                   const LifespanConstants& k = {});

}  // namespace mhdlab
