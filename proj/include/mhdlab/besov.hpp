#pragma once

#include "mhdlab/littlewood_paley.hpp"

#include <limits>
#include <map>

namespace mhdlab {

enum class Lebesgue { two, inf };

/// Ḃ^s_{p,1} with p ∈ {2, ∞}.
struct BesovParams {
  double s = 0.0;
  Lebesgue p = Lebesgue::two;
};

/// Hybrid space B̃^{s,r}_ε: Σ_q 2^{qs} max{ε, 2^{-q}}^{1-2/r} ‖Δ̇_q u‖_{L²}.
/// Use r = infinity() for the r = ∞ space.
struct HybridBesovParams {
  double s = 0.0;
  double r = 2.0;
  double eps = 1.0;

  static constexpr double infinity() { return std::numeric_limits<double>::infinity(); }
  /// ⌈-log2 ε⌉, the shell where the weight switches branch.
  int switch_shell() const;
};

/// ‖Δ̇_j f‖_{L^p} for every shell in the grid range (empty shells included).
std::map<int, double> shell_norms(const SpectralField& f, Lebesgue p,
                                  Mollifier m = Mollifier::sharp);

/// Homogeneous norm Σ_j 2^{js}‖Δ̇_j f‖_{L^p}; the mean does not contribute.
double besov_norm(const SpectralField& f, BesovParams prm, Mollifier m = Mollifier::sharp);

/// Same sum from precomputed shell norms.
double besov_norm(const std::map<int, double>& shell_norms, double s);

double hybrid_besov_norm(const SpectralField& f, HybridBesovParams prm,
                         Mollifier m = Mollifier::sharp);
double hybrid_besov_norm(const std::map<int, double>& l2_shell_norms, HybridBesovParams prm);

/// ‖∇f‖_{Ḃ^s_{2,1}} with ‖Δ̇_j∇f‖²_{L²} = Σ_a ‖Δ̇_j ∂_a f‖²_{L²}.
double gradient_besov_norm(const SpectralField& f, double s, Mollifier m = Mollifier::sharp);

/// Shell weight 2^{qs} max{ε, 2^{-q}}^{1-2/r}.
double hybrid_weight(int q, HybridBesovParams prm);

}  // namespace mhdlab
