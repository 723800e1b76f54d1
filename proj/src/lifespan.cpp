#include "mhdlab/lifespan.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

namespace mhdlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::map<int, double> l2_shells(const SpectralField& f) { return shell_norms(f, Lebesgue::two); }

// sup{T ≥ 0 : S(T) ≤ θ} for nondecreasing S with S(0) = 0, searched on [0, cap].
double sup_below(const std::function<double(double)>& S, double theta, double cap) {
  if (std::isfinite(cap)) {
    if (S(cap) <= theta) return cap;
  } else if (S(kInf) <= theta) {
    return kInf;
  }
  double lo = 0.0;
  double hi = std::isfinite(cap) ? cap : 1.0;
  if (!std::isfinite(cap)) {
    while (S(hi) <= theta) {
      lo = hi;
      hi *= 2.0;
    }
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (S(mid) <= theta ? lo : hi) = mid;
  }
  return lo;
}

// 1 − e^{−rate·T}, with the T = ∞ limit.
double saturation(double rate, double T) {
  return std::isfinite(T) ? -std::expm1(-rate * T) : 1.0;
}

}  // namespace

LifespanBound lifespan_lower_bound(const MHDState& init, const PhysicalParams& prm, double alpha,
                                   const LifespanConstants& k) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("lifespan requires alpha in (0, 1]");
  if (!(k.c > 0.0 && k.kappa > 0.0)) throw std::invalid_argument("lifespan constants must be > 0");
  const double d = init.grid().dim();
  const auto us = l2_shells(init.u);
  const auto hs = l2_shells(init.H);
  LifespanBound out;
  out.U = besov_norm(us, d / 2 - 1) + besov_norm(us, d / 2 - 1 + alpha);
  out.H = besov_norm(hs, d / 2 - 1) + besov_norm(hs, d / 2 - 1 + alpha);

  if (init.regime == Regime::incompressible) {
    const double rate = k.kappa * prm.nu_min();
    auto S = [&](double T) {
      double s = 0.0;
      for (const auto& [j, n] : us) {
        const double w = std::ldexp(1.0, 2 * j);
        s += std::pow(2.0, j * (d / 2 - 1)) * std::sqrt(saturation(rate * w, T)) * (n + hs.at(j));
      }
      return s;
    };
    out.threshold = k.c;
    out.t_nonlinear = out.t_density = kInf;
    out.t_heat = sup_below(S, k.c, kInf);
    out.T = out.t_heat;
    return out;
  }

  const auto as = l2_shells(init.density);
  out.A = besov_norm(as, d / 2) + besov_norm(as, d / 2 + alpha);
  const double A1 = 1.0 + out.A;
  const double H2 = out.H * out.H;
  const double denom = A1 * A1 * ((1.0 + H2 + out.U * out.U) * H2 + out.U);
  out.t_nonlinear = denom > 0.0 ? k.c / denom : kInf;
  out.t_density = k.c / std::pow(A1, 2.0 / alpha);
  out.threshold = k.c / (A1 * A1 * (1.0 + (1.0 + out.U) * H2));
  const double rate = k.kappa * prm.nu_bar();
  auto S = [&](double T) {
    double s = 0.0;
    for (const auto& [j, n] : us) {
      s += std::pow(2.0, j * (d / 2 - 1 + alpha)) * saturation(rate * std::ldexp(1.0, 2 * j), T) * n;
    }
    return s;
  };
  out.t_heat = sup_below(S, out.threshold, kInf);
  out.T = std::min({out.t_nonlinear, out.t_density, out.t_heat});
  return out;
}

}  // namespace mhdlab
