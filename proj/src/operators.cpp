#include "mhdlab/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mhdlab {

namespace {

const Complex I{0.0, 1.0};

// Derivative wavenumber along one axis; the Nyquist row has no real-valued
// derivative and is mapped to 0.
Eigen::ArrayXd derivative_k(const Grid& g, int axis) {
  Eigen::ArrayXd k = g.wavevectors().col(axis);
  const auto& lat = g.lattice();
  for (Eigen::Index i = 0; i < g.modes(); ++i) {
    if (lat(i, axis) == -g.n() / 2) k(i) = 0.0;
  }
  return k;
}

void require_vector(const SpectralField& u, const char* what) {
  if (!u.is_vector()) throw std::invalid_argument(std::string(what) + ": expected a vector field");
}

SpectralField scale_modes(const SpectralField& f, const Eigen::ArrayXd& w) {
  SpectralField out = f;
  for (int c = 0; c < out.components(); ++c) out.coeffs().col(c) *= w;
  return out;
}

// Potential part kkᵀ/|k|² û; zero at the mean.
Eigen::ArrayXXcd potential_part(const SpectralField& u) {
  const Grid& g = u.grid();
  const int d = g.dim();
  const auto& k = g.wavevectors();
  const auto& k2 = g.k2();
  Eigen::ArrayXcd kdotu = Eigen::ArrayXcd::Zero(g.modes());
  for (int c = 0; c < d; ++c) kdotu += k.col(c) * u.coeffs().col(c);
  Eigen::ArrayXd inv = (k2 > 0.0).select(k2.inverse(), 0.0);
  Eigen::ArrayXXcd out(g.modes(), d);
  for (int c = 0; c < d; ++c) out.col(c) = k.col(c) * inv * kdotu;
  return out;
}

}  // namespace

LeraySplit leray(const SpectralField& u) {
  require_vector(u, "leray");
  SpectralField perp(u.grid(), potential_part(u));
  SpectralField sol = u - perp;
  return {std::move(sol), std::move(perp)};
}

SpectralField leray_project(const SpectralField& u) { return leray(u).solenoidal; }

SpectralField leray_perp(const SpectralField& u) {
  require_vector(u, "leray_perp");
  return SpectralField(u.grid(), potential_part(u));
}

SpectralField lambda_power(const SpectralField& f, double sigma) {
  if (sigma == 0.0) return f;
  if (sigma < 0.0 && (f.coeffs().row(0).abs2() != 0.0).any()) {
    throw std::domain_error("lambda-inverse of nonzero mean");
  }
  const auto& kabs = f.grid().kabs();
  Eigen::ArrayXd w = (kabs > 0.0).select(kabs.pow(sigma), 0.0);
  return scale_modes(f, w);
}

SpectralField heat_flow(const SpectralField& f, double nu, double t) {
  if (t < 0.0) throw std::invalid_argument("heat_flow: negative time");
  if (nu < 0.0) throw std::invalid_argument("heat_flow: negative diffusivity");
  return scale_modes(f, (-nu * t * f.grid().k2()).exp());
}

SpectralField viscous_flow(const SpectralField& u, double mu, double lambda, double t) {
  require_vector(u, "viscous_flow");
  if (t < 0.0) throw std::invalid_argument("viscous_flow: negative time");
  const LeraySplit s = leray(u);
  return heat_flow(s.solenoidal, mu, t) + heat_flow(s.potential, 2.0 * mu + lambda, t);
}

SpectralField friedrichs(const SpectralField& f, int n) {
  if (n < 1) throw std::invalid_argument("friedrichs: n must be >= 1");
  const auto& kabs = f.grid().kabs();
  const double lo = 1.0 / n;
  const double hi = static_cast<double>(n);
  Eigen::ArrayXd w = ((kabs >= lo) && (kabs <= hi)).cast<double>();
  return scale_modes(f, w);
}

SpectralField partial(const SpectralField& f, int axis) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("partial: axis out of range");
  const Eigen::ArrayXcd ik = I * derivative_k(g, axis).cast<Complex>();
  SpectralField out = f;
  for (int c = 0; c < out.components(); ++c) out.coeffs().col(c) *= ik;
  return out;
}

SpectralField grad(const SpectralField& f) {
  if (!f.is_scalar()) throw std::invalid_argument("grad: expected a scalar field");
  const Grid& g = f.grid();
  SpectralField out(g, g.dim());
  for (int a = 0; a < g.dim(); ++a) {
    out.coeffs().col(a) = I * derivative_k(g, a).cast<Complex>() * f.coeffs().col(0);
  }
  return out;
}

SpectralField div(const SpectralField& u) {
  require_vector(u, "div");
  const Grid& g = u.grid();
  SpectralField out(g, 1);
  for (int a = 0; a < g.dim(); ++a) {
    out.coeffs().col(0) += I * derivative_k(g, a).cast<Complex>() * u.coeffs().col(a);
  }
  return out;
}

SpectralField curl(const SpectralField& u) {
  const Grid& g = u.grid();
  const int d = g.dim();
  auto ik = [&](int a) -> Eigen::ArrayXcd { return I * derivative_k(g, a).cast<Complex>(); };
  if (d == 3) {
    require_vector(u, "curl");
    const auto& c = u.coeffs();
    SpectralField out(g, 3);
    out.coeffs().col(0) = ik(1) * c.col(2) - ik(2) * c.col(1);
    out.coeffs().col(1) = ik(2) * c.col(0) - ik(0) * c.col(2);
    out.coeffs().col(2) = ik(0) * c.col(1) - ik(1) * c.col(0);
    return out;
  }
  if (u.is_vector()) {
    SpectralField out(g, 1);
    out.coeffs().col(0) = ik(0) * u.coeffs().col(1) - ik(1) * u.coeffs().col(0);
    return out;
  }
  SpectralField out(g, 2);
  out.coeffs().col(0) = ik(1) * u.coeffs().col(0);
  out.coeffs().col(1) = -ik(0) * u.coeffs().col(0);
  return out;
}

SpectralField differential(const SpectralField& f, Differential kind) {
  switch (kind) {
    case Differential::grad:
      return grad(f);
    case Differential::div:
      return div(f);
    case Differential::curl:
      return curl(f);
  }
  throw std::invalid_argument("differential: unknown kind");
}

SpectralField laplacian(const SpectralField& f) {
  Eigen::ArrayXd w = Eigen::ArrayXd::Zero(f.grid().modes());
  for (int a = 0; a < f.grid().dim(); ++a) w -= derivative_k(f.grid(), a).square();
  return scale_modes(f, w);
}

SpectralField viscosity_operator(const SpectralField& u, double mu, double lambda) {
  require_vector(u, "viscosity_operator");
  return mu * laplacian(u) + (lambda + mu) * grad(div(u));
}

SpectralField advection(const SpectralField& u, const SpectralField& x) {
  require_vector(u, "advection");
  require_same_grid(u.grid(), x.grid(), "advection");
  const Grid& g = u.grid();
  const PhysicalField pu = to_physical(u);
  PhysicalField acc(g, x.components());
  for (int a = 0; a < g.dim(); ++a) {
    const PhysicalField dx = to_physical(partial(x, a));
    for (int c = 0; c < x.components(); ++c) acc.values.col(c) += pu.values.col(a) * dx.values.col(c);
  }
  return to_spectral(acc);
}

SpectralField perp_grad(const SpectralField& psi) {
  if (psi.grid().dim() != 2 || !psi.is_scalar()) {
    throw std::invalid_argument("perp_grad: expected a 2D scalar field");
  }
  return -1.0 * curl(psi);
}

}  // namespace mhdlab
