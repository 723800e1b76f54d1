#include "mhdlab/transport.hpp"

#include "mhdlab/operators.hpp"

#include <sstream>

namespace mhdlab {

double courant_number(const SpectralField& v, double dt) {
  return dt * linf_norm(v) / v.grid().spacing();
}

SpectralField transport_step(const SpectralField& a, const SpectralField& v,
                             const SpectralField& f, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("transport_step requires dt > 0");
  if (!a.is_scalar() || !f.is_scalar() || !v.is_vector()) {
    throw std::invalid_argument("transport_step: expected scalar a, f and vector v");
  }
  require_same_grid(a.grid(), v.grid(), "transport_step");
  require_same_grid(a.grid(), f.grid(), "transport_step");
  const double vmax = linf_norm(v);
  const double h = a.grid().spacing();
  if (dt * vmax > h) {
    const double suggested = 0.9 * h / vmax;
    std::ostringstream msg;
    msg << "CFL violation: dt*max|v|/dx = " << dt * vmax / h << " > 1; use dt <= " << suggested;
    throw CflError(msg.str(), suggested);
  }
  auto rhs = [&](const SpectralField& x) { return f - dot(v, grad(x)); };
  const SpectralField k1 = rhs(a);
  const SpectralField k2 = rhs(a + (0.5 * dt) * k1);
  const SpectralField k3 = rhs(a + (0.5 * dt) * k2);
  const SpectralField k4 = rhs(a + dt * k3);
  return a + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace mhdlab
