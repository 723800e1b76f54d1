#include "mhdlab/acoustic.hpp"

#include <cmath>
#include <stdexcept>

namespace mhdlab {

namespace {

void check(const AcousticState& st, double t, double speed) {
  if (!(st.eps > 0.0)) throw std::invalid_argument("acoustic flow requires eps > 0");
  if (t < 0.0) throw std::invalid_argument("acoustic flow requires t >= 0");
  if (!(speed > 0.0)) throw std::invalid_argument("acoustic flow requires a positive sound speed");
  if (!st.b.is_scalar() || !st.psi.is_scalar()) {
    throw std::invalid_argument("acoustic state fields must be scalar");
  }
  require_same_grid(st.b.grid(), st.psi.grid(), "acoustic state");
}

}  // namespace

double acoustic_energy(const AcousticState& st) {
  const double nb = st.b.l2_norm(), np = st.psi.l2_norm();
  return nb * nb + np * np;
}

AcousticState acoustic_flow(const AcousticState& st, double t,
                            const std::optional<AcousticForcing>& forcing, double speed) {
  check(st, t, speed);
  const Grid& g = st.b.grid();
  const auto& kabs = g.kabs();
  AcousticState out = st;
  auto& b = out.b.coeffs();
  auto& p = out.psi.coeffs();
  const double rate = speed / st.eps;
  for (Eigen::Index m = 0; m < g.modes(); ++m) {
    const double omega = rate * kabs(m);
    const double th = omega * t;
    const double c = std::cos(th), s = std::sin(th);
    const Complex b0 = st.b.coeffs()(m, 0), p0 = st.psi.coeffs()(m, 0);
    Complex bn = c * b0 - s * p0;
    Complex pn = c * p0 + s * b0;
    if (forcing) {
      // ∫_0^t R(ωτ)dτ applied to (F, G).
      double i_c, i_s;
      if (omega == 0.0) {
        i_c = t;
        i_s = 0.0;
      } else {
        i_c = s / omega;
        i_s = (1.0 - c) / omega;
      }
      const Complex F = forcing->F.coeffs()(m, 0), G = forcing->G.coeffs()(m, 0);
      bn += i_c * F - i_s * G;
      pn += i_s * F + i_c * G;
    }
    b(m, 0) = bn;
    p(m, 0) = pn;
  }
  return out;
}

AcousticState acoustic_flow(const AcousticState& st, double t,
                            const std::function<AcousticForcing(double)>& forcing, int substeps,
                            double speed) {
  if (substeps < 1) throw std::invalid_argument("acoustic flow requires substeps >= 1");
  check(st, t, speed);
  const double h = t / substeps;
  AcousticState cur = st;
  for (int i = 0; i < substeps; ++i) {
    cur = acoustic_flow(cur, h, forcing((i + 0.5) * h), speed);
  }
  return cur;
}

}  // namespace mhdlab
