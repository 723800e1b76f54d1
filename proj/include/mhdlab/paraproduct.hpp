#pragma once

#include "mhdlab/littlewood_paley.hpp"

namespace mhdlab {

// Bony calculus on the grid. Products are formed in physical space and
// dealiased, so with the 2/3 rule every term is an exact truncated convolution
// and the three pieces add up to dealias(u·v):
//
//   u v = Ṫ_u v + Ṫ_v u + Ṙ(u, v)
//
// Ṡ_{q-1} carries the mean, so Ṫ_u v already contains mean(u)·(v - mean v).
// The one pairing no sum over shells reaches, mean(u)·mean(v), is carried by
// the remainder.

/// Ṫ_u v = Σ_q Ṡ_{q-1}u · Δ̇_q v.
SpectralField paraproduct(const SpectralField& u, const SpectralField& v,
                          Mollifier m = Mollifier::sharp);

/// Ṙ(u, v) = Σ_q Δ̇_q u · (Δ̇_{q-1} + Δ̇_q + Δ̇_{q+1}) v  +  mean(u)·mean(v).
SpectralField remainder(const SpectralField& u, const SpectralField& v,
                        Mollifier m = Mollifier::sharp);

}  // namespace mhdlab
