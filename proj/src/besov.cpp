#include "mhdlab/besov.hpp"

#include "mhdlab/operators.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

namespace mhdlab {

int HybridBesovParams::switch_shell() const {
  return static_cast<int>(std::ceil(-std::log2(eps)));
}

std::map<int, double> shell_norms(const SpectralField& f, Lebesgue p, Mollifier m) {
  const Grid& g = f.grid();
  const ShellRange range = shell_range(g, m);
  std::map<int, double> out;
  for (int j = range.first; j <= range.last; ++j) out[j] = 0.0;

  if (p == Lebesgue::two && m == Mollifier::sharp) {
    // Parseval, one pass over the lattice.
    const Eigen::ArrayXi& idx = g.sharp_shell();
    const Eigen::ArrayXd energy = f.coeffs().abs2().rowwise().sum();
    for (Eigen::Index i = 0; i < g.modes(); ++i) {
      if (idx(i) == INT_MIN) continue;
      out[idx(i)] += energy(i);
    }
    for (auto& [j, e] : out) e = std::sqrt(g.volume() * e);
    return out;
  }

  for (int j = range.first; j <= range.last; ++j) {
    const SpectralField block = dyadic_block(f, j, m);
    if (block.coeffs().abs2().sum() == 0.0) continue;
    out[j] = p == Lebesgue::two ? block.l2_norm() : linf_norm(block);
  }
  return out;
}

double besov_norm(const std::map<int, double>& norms, double s) {
  double sum = 0.0;
  for (const auto& [j, n] : norms) {
    if (n != 0.0) sum += std::exp2(j * s) * n;
  }
  return sum;
}

double besov_norm(const SpectralField& f, BesovParams prm, Mollifier m) {
  return besov_norm(shell_norms(f, prm.p, m), prm.s);
}

double hybrid_weight(int q, HybridBesovParams prm) {
  const double expo = std::isinf(prm.r) ? 1.0 : 1.0 - 2.0 / prm.r;
  return std::exp2(q * prm.s) * std::pow(std::max(prm.eps, std::exp2(-q)), expo);
}

double hybrid_besov_norm(const std::map<int, double>& norms, HybridBesovParams prm) {
  double sum = 0.0;
  for (const auto& [q, n] : norms) {
    if (n != 0.0) sum += hybrid_weight(q, prm) * n;
  }
  return sum;
}

double hybrid_besov_norm(const SpectralField& f, HybridBesovParams prm, Mollifier m) {
  return hybrid_besov_norm(shell_norms(f, Lebesgue::two, m), prm);
}

double gradient_besov_norm(const SpectralField& f, double s, Mollifier m) {
  std::map<int, double> sq;
  for (int a = 0; a < f.grid().dim(); ++a) {
    for (const auto& [j, n] : shell_norms(partial(f, a), Lebesgue::two, m)) sq[j] += n * n;
  }
  for (auto& [j, v] : sq) v = std::sqrt(v);
  return besov_norm(sq, s);
}

}  // namespace mhdlab
