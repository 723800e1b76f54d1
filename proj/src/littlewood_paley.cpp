#include "mhdlab/littlewood_paley.hpp"

#include <climits>
#include <cmath>
#include <stdexcept>

namespace mhdlab {

namespace {

double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// Multiplier of shell j on every mode (mean mode gets 0).
Eigen::ArrayXd shell_multiplier(const Grid& g, int j, Mollifier m) {
  Eigen::ArrayXd w = Eigen::ArrayXd::Zero(g.modes());
  if (m == Mollifier::sharp) {
    const Eigen::ArrayXi& idx = g.sharp_shell();
    w = (idx == j).cast<double>();
  } else {
    const auto& kabs = g.kabs();
    for (Eigen::Index i = 1; i < g.modes(); ++i) w(i) = shell_symbol(kabs(i), j, m);
  }
  return w;
}

// Multiplier of Ṡ_j without the mean mode.
Eigen::ArrayXd low_pass_multiplier(const Grid& g, int j, Mollifier m) {
  Eigen::ArrayXd w = Eigen::ArrayXd::Zero(g.modes());
  if (m == Mollifier::sharp) {
    const Eigen::ArrayXi& idx = g.sharp_shell();
    w = (idx <= j - 1).cast<double>();
  } else {
    const auto& kabs = g.kabs();
    const double scale = std::ldexp(1.0, 1 - j);
    for (Eigen::Index i = 0; i < g.modes(); ++i) w(i) = smooth_cutoff(scale * kabs(i));
  }
  w(0) = 0.0;
  return w;
}

SpectralField apply_multiplier(const SpectralField& f, const Eigen::ArrayXd& w) {
  SpectralField out = f;
  for (int c = 0; c < out.components(); ++c) out.coeffs().col(c) *= w;
  return out;
}

}  // namespace

double smooth_cutoff(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double a = bump(2.0 - r);
  const double b = bump(r - 1.0);
  return a / (a + b);
}

double shell_symbol(double kabs, int j, Mollifier m) {
  if (kabs <= 0.0) return 0.0;
  if (m == Mollifier::sharp) {
    const double lo = std::ldexp(1.0, j);
    return (kabs >= lo && kabs < 2.0 * lo) ? 1.0 : 0.0;
  }
  const double r = std::ldexp(kabs, -j);
  return smooth_cutoff(r) - smooth_cutoff(2.0 * r);
}

Eigen::ArrayXi sharp_shell_index(const Grid& g) { return g.sharp_shell(); }

ShellRange shell_range(const Grid& g, Mollifier m) {
  const double kmax = g.dk() * std::sqrt(static_cast<double>(g.dim())) * (g.n() / 2);
  const int lo = static_cast<int>(std::floor(std::log2(g.min_k())));
  const int hi = static_cast<int>(std::floor(std::log2(kmax)));
  if (m == Mollifier::sharp) return {lo, hi};
  return {lo - 1, hi + 1};
}

BlockResult dyadic_block_checked(const SpectralField& f, int j, Mollifier m) {
  const ShellRange range = shell_range(f.grid(), m);
  if (!range.contains(j)) {
    return {SpectralField(f.grid(), f.components()), true};
  }
  return {apply_multiplier(f, shell_multiplier(f.grid(), j, m)), false};
}

SpectralField dyadic_block(const SpectralField& f, int j, Mollifier m) {
  return dyadic_block_checked(f, j, m).field;
}

SpectralField low_pass(const SpectralField& f, int j, Mollifier m) {
  Eigen::ArrayXd w = low_pass_multiplier(f.grid(), j, m);
  w(0) = 1.0;
  return apply_multiplier(f, w);
}

SpectralField DyadicDecomposition::reconstruct() const {
  if (shells.empty()) throw std::logic_error("empty decomposition");
  SpectralField out(shells.front().second.grid(), shells.front().second.components());
  for (const auto& [j, block] : shells) out += block;
  out.coeffs().row(0) += mean_part.transpose();
  return out;
}

DyadicDecomposition decompose(const SpectralField& f, Mollifier m) {
  DyadicDecomposition d;
  d.mollifier = m;
  d.mean_part = f.coeffs().row(0).transpose();
  const ShellRange range = shell_range(f.grid(), m);
  for (int j = range.first; j <= range.last; ++j) {
    d.shells.emplace_back(j, dyadic_block(f, j, m));
  }
  return d;
}

int split_shell(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("high/low split requires eps > 0");
  return static_cast<int>(std::floor(-std::log2(eps)));
}

std::pair<SpectralField, SpectralField> highlow_split(const SpectralField& f, double eps,
                                                      Mollifier m) {
  const int q = split_shell(eps);
  // Σ_{q' <= q} Δ̇_{q'} = Ṡ_{q+1} without the mean.
  const Eigen::ArrayXd low = low_pass_multiplier(f.grid(), q + 1, m);
  SpectralField bf = apply_multiplier(f, low);
  SpectralField hf = f - bf;
  hf.coeffs().row(0).setZero();
  return {std::move(bf), std::move(hf)};
}

}  // namespace mhdlab
