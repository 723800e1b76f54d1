#pragma once

#include "mhdlab/spectral_field.hpp"

namespace mhdlab {

// Fourier-multiplier operators. All of them are diagonal (scalar fields) or
// d×d block diagonal (vector fields) in Fourier space, so they commute.
//
// Zero-mode conventions: the Leray projector keeps the mean, its complement
// and Λ^{-1} annihilate it.

struct LeraySplit {
  SpectralField solenoidal;  // 𝒫u
  SpectralField potential;   // 𝒫⊥u = Δ^{-1}∇div u
};

/// û ↦ ((I - kkᵀ/|k|²)û, kkᵀ/|k|² û).
LeraySplit leray(const SpectralField& u);
SpectralField leray_project(const SpectralField& u);
SpectralField leray_perp(const SpectralField& u);

/// Λ^σ with symbol |k|^σ. For σ < 0 the mean must vanish.
SpectralField lambda_power(const SpectralField& f, double sigma);

/// e^{νtΔ}: per-mode factor exp(-ν|k|²t).
SpectralField heat_flow(const SpectralField& f, double nu, double t);

/// e^{t𝒜} for 𝒜 = μΔ + (λ+μ)∇div: exp(-μ|k|²t) on the solenoidal part and
/// exp(-(2μ+λ)|k|²t) on the potential part.
SpectralField viscous_flow(const SpectralField& u, double mu, double lambda, double t);

/// Friedrichs projector Ė_n: keeps modes with 1/n <= |k| <= n.
SpectralField friedrichs(const SpectralField& f, int n);

enum class Differential { grad, div, curl };

/// Spectral ik-multipliers.
///   grad: scalar → vector
///   div:  vector → scalar
///   curl: 3D vector → vector; 2D vector → scalar ∂₁u₂ - ∂₂u₁;
///         2D scalar ω → vector (∂₂ω, -∂₁ω)
SpectralField differential(const SpectralField& f, Differential kind);

SpectralField grad(const SpectralField& f);
SpectralField div(const SpectralField& u);
SpectralField curl(const SpectralField& u);
/// Componentwise Laplacian.
SpectralField laplacian(const SpectralField& f);
/// 𝒜u = μΔu + (λ+μ)∇div u.
SpectralField viscosity_operator(const SpectralField& u, double mu, double lambda);
/// Partial derivative ∂_axis, componentwise.
SpectralField partial(const SpectralField& f, int axis);
/// (u·∇)X = Σ_a u_a ∂_a X for scalar or vector X, dealiased.
SpectralField advection(const SpectralField& u, const SpectralField& x);

/// (-∂₂ψ, ∂₁ψ): velocity of a 2D stream function.
SpectralField perp_grad(const SpectralField& psi);

}  // namespace mhdlab
