#pragma once

#include "mhdlab/spectral_field.hpp"

#include <utility>
#include <vector>

namespace mhdlab {

/// Shell multiplier used by the dyadic decomposition.
///
/// sharp:  shell j is the indicator of 2^j <= |k| < 2^{j+1}; an exact
///         partition of the lattice, so shell arithmetic is exact.
/// smooth: shell j is φ̂(2^{-j}k) with φ̂(ξ) = χ(ξ) - χ(2ξ), where χ is a C^∞
///         radial cutoff equal to 1 on |ξ| <= 1 and 0 on |ξ| >= 2 built from
///         the exp(-1/x) bump. Shell j is supported in 2^{j-1} <= |k| <= 2^{j+1}.
enum class Mollifier { sharp, smooth };

/// Smooth radial cutoff χ(r) (1 for r <= 1, 0 for r >= 2).
double smooth_cutoff(double r);

/// Value of the shell-j symbol at |k| (k != 0).
double shell_symbol(double kabs, int j, Mollifier m);

/// Sharp shell index of every mode (floor(log2 |k|)); the mean mode gets INT_MIN.
/// Computed with exact comparisons against 4^j so that it is consistent across
/// grids whose box lengths differ by powers of two.
Eigen::ArrayXi sharp_shell_index(const Grid& g);

/// Inclusive range of shells that can be nonzero on a grid.
struct ShellRange {
  int first;
  int last;
  bool contains(int j) const { return j >= first && j <= last; }
};
ShellRange shell_range(const Grid& g, Mollifier m = Mollifier::sharp);

struct BlockResult {
  SpectralField field;
  bool outside_grid = false;  // the shell lies entirely off the lattice
};

/// Δ̇_j f, reporting when j is outside the representable range.
BlockResult dyadic_block_checked(const SpectralField& f, int j, Mollifier m = Mollifier::sharp);

/// Δ̇_j f. Shells outside the grid range give the zero field.
SpectralField dyadic_block(const SpectralField& f, int j, Mollifier m = Mollifier::sharp);

/// Ṡ_j f = mean + Σ_{j' <= j-1} Δ̇_{j'} f.
SpectralField low_pass(const SpectralField& f, int j, Mollifier m = Mollifier::sharp);

struct DyadicDecomposition {
  Mollifier mollifier = Mollifier::sharp;
  std::vector<std::pair<int, SpectralField>> shells;
  Eigen::ArrayXcd mean_part;  // one entry per component

  /// Σ shells + mean.
  SpectralField reconstruct() const;
};

DyadicDecomposition decompose(const SpectralField& f, Mollifier m = Mollifier::sharp);

/// Split shell index for the high/low decomposition: floor(-log2 eps).
int split_shell(double eps);

/// (f_BF, f_HF): shells q <= floor(-log2 eps) and q > floor(-log2 eps).
/// f_BF + f_HF + mean = f.
std::pair<SpectralField, SpectralField> highlow_split(const SpectralField& f, double eps,
                                                      Mollifier m = Mollifier::sharp);

}  // namespace mhdlab
