#include "mhdlab/mhd.hpp"

#include "mhdlab/operators.hpp"

#include <cmath>
#include <sstream>

namespace mhdlab {

namespace {

struct RegimeName {
  Regime regime;
  const char* name;
};

constexpr RegimeName kRegimes[] = {
    {Regime::compressible, "compressible"},
    {Regime::scaled, "scaled"},
    {Regime::incompressible, "incompressible"},
};

void require_regime(const MHDState& st, Regime r, const char* what) {
  if (st.regime != r) {
    throw std::invalid_argument(std::string(what) + ": state is in the " + to_string(st.regime) +
                                " regime");
  }
}

void require_shapes(const SpectralField& density, const SpectralField& u, const SpectralField& H) {
  require_same_grid(density.grid(), u.grid(), "MHD state");
  require_same_grid(H.grid(), u.grid(), "MHD state");
  if (!density.is_scalar()) throw std::invalid_argument("density variable must be scalar");
  if (!u.is_vector() || !H.is_vector()) {
    throw std::invalid_argument("velocity and magnetic field must have d components");
  }
}

// Physical samples of f and of its first derivatives ∂_a f (column c·d + a).
struct Sampled {
  Eigen::ArrayXXd value;
  Eigen::ArrayXXd gradient;
};

Sampled sample_with_gradient(const SpectralField& f) {
  const int d = f.grid().dim();
  Sampled s{to_physical(f).values, Eigen::ArrayXXd(f.grid().modes(), f.components() * d)};
  for (int a = 0; a < d; ++a) {
    const PhysicalField p = to_physical(partial(f, a));
    for (int c = 0; c < f.components(); ++c) s.gradient.col(c * d + a) = p.values.col(c);
  }
  return s;
}

double grad_l2(const SpectralField& f) {
  const Grid& g = f.grid();
  double sum = 0.0;
  for (int c = 0; c < f.components(); ++c) sum += (g.k2() * f.coeffs().col(c).abs2()).sum();
  return std::sqrt(g.volume() * sum);
}

void require_solenoidal(const SpectralField& f, const char* name) {
  if (divergence_norm(f) > 1e-10 * grad_l2(f)) {
    throw std::invalid_argument(std::string("incompressible regime requires div ") + name + " = 0");
  }
}

Tendency sum(const SplitTendency& s) {
  return Tendency{s.stiff.density + s.nonstiff.density, s.stiff.u + s.nonstiff.u,
                  s.stiff.H + s.nonstiff.H};
}

// (a,u,H) and (b,u,H) share one splitting; s is the density scale (1 or ε):
//   stiff:    dr = −div u/s,  du = −P′(1)∇r/s + 𝒜u,  dH = νΔH
//   nonstiff: dr = −(u·∇r + r div u)
//             du = −u·∇u − I(s r)𝒜u − K(s r)∇r/s + (H·∇H − ½∇|H|²)/(1 + s r)
//             dH = −u·∇H + H·∇u − (div u)H
SplitTendency split_density(const MHDState& st, const PhysicalParams& prm,
                            const StepperConfig& cfg) {
  const Grid& g = st.grid();
  const int d = g.dim();
  const double s = st.density_scale();
  const Eigen::Index n = g.modes();

  const Sampled r = sample_with_gradient(st.density);
  const Sampled u = sample_with_gradient(st.u);
  const Sampled H = sample_with_gradient(st.H);
  const SpectralField Au_hat = viscosity_operator(st.u, prm.mu, prm.lambda);
  const Eigen::ArrayXXd Au = to_physical(Au_hat).values;

  const Eigen::ArrayXd rho = 1.0 + s * r.value.col(0);
  const double floor_rho = rho.minCoeff();
  if (!(floor_rho >= cfg.vacuum_floor)) throw VacuumError(floor_rho);

  Eigen::ArrayXd div_u = Eigen::ArrayXd::Zero(n);
  for (int a = 0; a < d; ++a) div_u += u.gradient.col(a * d + a);

  PhysicalField dr(g, 1), du(g, d), dH(g, d);
  dr.values.col(0) = -r.value.col(0) * div_u;
  for (int a = 0; a < d; ++a) dr.values.col(0) -= u.value.col(a) * r.gradient.col(a);

  Eigen::ArrayXd inertia(n), defect(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    const double z = s * r.value(m, 0);
    inertia(m) = inertia_factor(z);
    defect(m) = pressure_defect(prm, z) / s;
  }

  for (int c = 0; c < d; ++c) {
    auto out = du.values.col(c);
    out = -inertia * Au.col(c) - defect * r.gradient.col(c);
    Eigen::ArrayXd magnetic = Eigen::ArrayXd::Zero(n);
    for (int a = 0; a < d; ++a) {
      out -= u.value.col(a) * u.gradient.col(c * d + a);
      magnetic += H.value.col(a) * H.gradient.col(c * d + a) - H.value.col(a) * H.gradient.col(a * d + c);
    }
    out += magnetic / rho;

    auto outH = dH.values.col(c);
    outH = -div_u * H.value.col(c);
    for (int a = 0; a < d; ++a) {
      outH += H.value.col(a) * u.gradient.col(c * d + a) - u.value.col(a) * H.gradient.col(c * d + a);
    }
  }

  SplitTendency out{
      Tendency{-1.0 / s * div(st.u),
               -prm.sound_speed2() / s * grad(st.density) + Au_hat,
               prm.nu * laplacian(st.H)},
      Tendency{to_spectral(dr, cfg.dealias), to_spectral(du, cfg.dealias),
               to_spectral(dH, cfg.dealias)}};
  out.nonstiff.density.coeffs()(0, 0) = 0.0;
  return out;
}

SplitTendency split_incompressible(const MHDState& st, const PhysicalParams& prm,
                                   const StepperConfig& cfg) {
  require_solenoidal(st.u, "v");
  require_solenoidal(st.H, "B");
  const Grid& g = st.grid();
  const int d = g.dim();
  const Sampled v = sample_with_gradient(st.u);
  const Sampled B = sample_with_gradient(st.H);
  PhysicalField dv(g, d), dB(g, d);
  for (int c = 0; c < d; ++c) {
    for (int a = 0; a < d; ++a) {
      dv.values.col(c) += B.value.col(a) * B.gradient.col(c * d + a) -
                          v.value.col(a) * v.gradient.col(c * d + a);
      dB.values.col(c) += B.value.col(a) * v.gradient.col(c * d + a) -
                          v.value.col(a) * B.gradient.col(c * d + a);
    }
  }
  return SplitTendency{
      Tendency{SpectralField(g, 1), prm.mu * laplacian(st.u), prm.nu * laplacian(st.H)},
      Tendency{SpectralField(g, 1), leray_project(to_spectral(dv, cfg.dealias)),
               leray_project(to_spectral(dB, cfg.dealias))}};
}

}  // namespace

std::string to_string(Regime r) {
  for (const auto& e : kRegimes) {
    if (e.regime == r) return e.name;
  }
  throw std::invalid_argument("unknown regime");
}

Regime parse_regime(const std::string& name) {
  for (const auto& e : kRegimes) {
    if (name == e.name) return e.regime;
  }
  throw std::invalid_argument("unknown regime '" + name + "'");
}

MHDState MHDState::compressible(SpectralField a, SpectralField u, SpectralField H, double t) {
  require_shapes(a, u, H);
  return MHDState{Regime::compressible, 1.0, t, std::move(a), std::move(u), std::move(H)};
}

MHDState MHDState::scaled(SpectralField b, SpectralField u, SpectralField H, double eps,
                          double t) {
  require_shapes(b, u, H);
  if (!(eps > 0.0)) throw std::invalid_argument("scaled regime requires eps > 0");
  return MHDState{Regime::scaled, eps, t, std::move(b), std::move(u), std::move(H)};
}

MHDState MHDState::incompressible(SpectralField v, SpectralField B, double t) {
  SpectralField zero(v.grid(), 1);
  require_shapes(zero, v, B);
  return MHDState{Regime::incompressible, 1.0, t, std::move(zero), std::move(v), std::move(B)};
}

double MHDState::density_scale() const {
  switch (regime) {
    case Regime::compressible: return 1.0;
    case Regime::scaled: return eps;
    case Regime::incompressible: return 0.0;
  }
  return 0.0;
}

double PhysicalParams::pressure(double rho) const {
  return pressure_coefficient * std::pow(rho, gamma);
}

double PhysicalParams::pressure_derivative(double rho) const {
  return pressure_coefficient * gamma * std::pow(rho, gamma - 1.0);
}

void PhysicalParams::validate() const {
  if (!(mu > 0.0)) throw std::invalid_argument("viscosity requires mu > 0");
  if (!(2.0 * mu + lambda > 0.0)) throw std::invalid_argument("viscosity requires 2mu + lambda > 0");
  if (!(nu > 0.0)) throw std::invalid_argument("magnetic diffusivity requires nu > 0");
  if (!(pressure_coefficient > 0.0)) throw std::invalid_argument("pressure law requires A > 0");
  if (!(gamma > 1.0)) throw std::invalid_argument("pressure law requires gamma > 1");
}

double inertia_factor(double a) { return a / (1.0 + a); }

double pressure_gradient_factor(const PhysicalParams& prm, double a) {
  return prm.pressure_derivative(1.0 + a) / (1.0 + a);
}

double pressure_defect(const PhysicalParams& prm, double z) {
  // P′(ρ)/ρ = Aγρ^{γ−2}.
  return prm.pressure_coefficient * prm.gamma * std::expm1((prm.gamma - 2.0) * std::log1p(z));
}

double pressure_potential(const PhysicalParams& prm, double rho) {
  const double g = prm.gamma;
  return prm.pressure_coefficient * (std::pow(rho, g) - 1.0 - g * (rho - 1.0)) / (g - 1.0);
}

BlowupError::BlowupError(double t)
    : NumericalAbort([t] {
        std::ostringstream os;
        os << "numerical blow-up at t = " << t;
        return os.str();
      }()),
      t_(t) {}

double divergence_norm(const SpectralField& f) { return div(f).l2_norm(); }

SplitTendency split_rhs(const MHDState& st, const PhysicalParams& prm, const StepperConfig& cfg) {
  require_shapes(st.density, st.u, st.H);
  if (st.regime == Regime::incompressible) return split_incompressible(st, prm, cfg);
  return split_density(st, prm, cfg);
}

Tendency rhs_compressible(const MHDState& st, const PhysicalParams& prm,
                          const StepperConfig& cfg) {
  require_regime(st, Regime::compressible, "rhs_compressible");
  return sum(split_rhs(st, prm, cfg));
}

SplitTendency rhs_scaled(const MHDState& st, const PhysicalParams& prm, const StepperConfig& cfg) {
  require_regime(st, Regime::scaled, "rhs_scaled");
  return split_rhs(st, prm, cfg);
}

Tendency rhs_incompressible(const MHDState& st, const PhysicalParams& prm,
                            const StepperConfig& cfg) {
  require_regime(st, Regime::incompressible, "rhs_incompressible");
  return sum(split_rhs(st, prm, cfg));
}

}  // namespace mhdlab
