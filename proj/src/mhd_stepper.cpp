#include "mhdlab/mhd.hpp"

#include "mhdlab/operators.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <json.hpp>

#include <array>
#include <cmath>
#include <map>

namespace mhdlab {

namespace {

// φ-functions of one step size, tabulated per distinct |n|². Each slot holds
// the 2×2 block acting on (ρ̂, k̂·û) and the scalars for the transverse
// velocity and for H.
struct PhiTable {
  Eigen::ArrayXi slot;
  std::vector<Eigen::Matrix2cd> block;
  std::vector<double> perp;
  std::vector<double> mag;
};

struct PhiTables {
  PhiTable e, phi1, phi2;
};

// φ0 = e^z, φ1 = (e^z − 1)/z, φ2 = (e^z − 1 − z)/z².
std::array<double, 3> scalar_phi(double z) {
  if (std::abs(z) < 1e-4) {
    return {std::exp(z), 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0,
            0.5 + z / 6.0 + z * z / 24.0 + z * z * z / 120.0};
  }
  const double em1 = std::expm1(z);
  return {std::exp(z), em1 / z, (em1 - z) / (z * z)};
}

Eigen::Matrix2cd generator(Regime regime, double eps, const PhysicalParams& prm, double kabs) {
  using C = Complex;
  Eigen::Matrix2cd M = Eigen::Matrix2cd::Zero();
  const double k2 = kabs * kabs;
  if (regime == Regime::incompressible) {
    M(1, 1) = -prm.mu * k2;
    return M;
  }
  M(0, 1) = C(0.0, -kabs / eps);
  M(1, 0) = C(0.0, -prm.sound_speed2() * kabs / eps);
  M(1, 1) = -prm.nu_bar() * k2;
  return M;
}

PhiTables build_tables(const Grid& g, Regime regime, double eps, const PhysicalParams& prm,
                       double h, bool with_phi) {
  PhiTables t;
  std::map<int, int> slots;
  t.e.slot.resize(g.modes());
  for (Eigen::Index m = 0; m < g.modes(); ++m) {
    const int key = g.n2()(m);
    auto [it, fresh] = slots.emplace(key, static_cast<int>(slots.size()));
    t.e.slot(m) = it->second;
    if (!fresh) continue;
    const double kabs = std::sqrt(static_cast<double>(key)) * g.dk();
    const double k2 = kabs * kabs;
    const auto sp = scalar_phi(-prm.mu * k2 * h);
    const auto sh = scalar_phi(-prm.nu * k2 * h);
    Eigen::Matrix2cd E, P1, P2;
    if (key == 0) {
      E = P1 = Eigen::Matrix2cd::Identity();
      P2 = 0.5 * Eigen::Matrix2cd::Identity();
    } else {
      // exp([[hM, I, 0], [0, 0, I], [0, 0, 0]]) = [[e^{hM}, φ1(hM), φ2(hM)], ...].
      Eigen::Matrix<Complex, 6, 6> aug = Eigen::Matrix<Complex, 6, 6>::Zero();
      aug.block<2, 2>(0, 0) = h * generator(regime, eps, prm, kabs);
      aug.block<2, 2>(0, 2).setIdentity();
      aug.block<2, 2>(2, 4).setIdentity();
      const Eigen::Matrix<Complex, 6, 6> ex = aug.exp();
      E = ex.block<2, 2>(0, 0);
      P1 = ex.block<2, 2>(0, 2);
      P2 = ex.block<2, 2>(0, 4);
    }
    t.e.block.push_back(E);
    t.e.perp.push_back(sp[0]);
    t.e.mag.push_back(sh[0]);
    if (with_phi) {
      t.phi1.block.push_back(P1);
      t.phi1.perp.push_back(sp[1]);
      t.phi1.mag.push_back(sh[1]);
      t.phi2.block.push_back(P2);
      t.phi2.perp.push_back(sp[2]);
      t.phi2.mag.push_back(sh[2]);
    }
  }
  if (with_phi) t.phi1.slot = t.phi2.slot = t.e.slot;
  return t;
}

Tendency fields_of(const MHDState& st) { return Tendency{st.density, st.u, st.H}; }

MHDState with_fields(const MHDState& proto, Tendency f, double t) {
  return MHDState{proto.regime, proto.eps, t, std::move(f.density), std::move(f.u),
                  std::move(f.H)};
}

Tendency apply(const PhiTable& tab, const Tendency& in) {
  const Grid& g = in.u.grid();
  const int d = g.dim();
  Tendency out = in;
  const auto& k = g.wavevectors();
  const auto& kabs = g.kabs();
  for (Eigen::Index m = 0; m < g.modes(); ++m) {
    const int s = tab.slot(m);
    const double perp = tab.perp[s];
    for (int c = 0; c < d; ++c) out.H.coeffs()(m, c) = tab.mag[s] * in.H.coeffs()(m, c);
    if (kabs(m) == 0.0) {
      const Eigen::Matrix2cd& B = tab.block[s];
      out.density.coeffs()(m, 0) = B(0, 0) * in.density.coeffs()(m, 0);
      for (int c = 0; c < d; ++c) out.u.coeffs()(m, c) = perp * in.u.coeffs()(m, c);
      continue;
    }
    Complex upar = 0.0;
    for (int a = 0; a < d; ++a) upar += k(m, a) / kabs(m) * in.u.coeffs()(m, a);
    const Eigen::Vector2cd r = tab.block[s] * Eigen::Vector2cd(in.density.coeffs()(m, 0), upar);
    out.density.coeffs()(m, 0) = r(0);
    for (int a = 0; a < d; ++a) {
      const double kh = k(m, a) / kabs(m);
      out.u.coeffs()(m, a) = r(1) * kh + perp * (in.u.coeffs()(m, a) - upar * kh);
    }
  }
  return out;
}

void axpy(Tendency& y, double h, const Tendency& x) {
  y.density.coeffs() += h * x.density.coeffs();
  y.u.coeffs() += h * x.u.coeffs();
  y.H.coeffs() += h * x.H.coeffs();
}

Tendency combine(const Tendency& y, double h, const Tendency& x) {
  Tendency out = y;
  axpy(out, h, x);
  return out;
}

bool finite(const Tendency& f) {
  return f.density.coeffs().allFinite() && f.u.coeffs().allFinite() && f.H.coeffs().allFinite();
}

Tendency truncate(Tendency f, int n) {
  if (n < 1) return f;
  return Tendency{friedrichs(f.density, n), friedrichs(f.u, n), friedrichs(f.H, n)};
}

double volume_integral(const Eigen::ArrayXd& values, const Grid& g) {
  return values.mean() * g.volume();
}

struct SchemeName {
  Scheme scheme;
  const char* name;
};
constexpr SchemeName kSchemes[] = {{Scheme::strang_rk4, "strang_rk4"},
                                   {Scheme::etd_rk2, "etd_rk2"}};

struct StatusName {
  RunStatus status;
  const char* name;
};
constexpr StatusName kStatuses[] = {
    {RunStatus::completed, "completed"},
    {RunStatus::vacuum, "vacuum"},
    {RunStatus::blowup, "blowup"},
    {RunStatus::gradient_blowup_u, "gradient_blowup_u"},
    {RunStatus::gradient_blowup_H, "gradient_blowup_H"},
};

const SpectralField& field_by_name(const MHDState& st, const std::string& name) {
  if (name == "density") return st.density;
  if (name == "u") return st.u;
  if (name == "H") return st.H;
  throw std::invalid_argument("unknown state field '" + name + "'");
}

}  // namespace

std::string to_string(Scheme s) {
  for (const auto& e : kSchemes) {
    if (e.scheme == s) return e.name;
  }
  throw std::invalid_argument("unknown scheme");
}

Scheme parse_scheme(const std::string& name) {
  for (const auto& e : kSchemes) {
    if (name == e.name) return e.scheme;
  }
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

std::string to_string(RunStatus s) {
  for (const auto& e : kStatuses) {
    if (e.status == s) return e.name;
  }
  throw std::invalid_argument("unknown run status");
}

std::string NormRequest::key() const {
  return field + "_s" + nlohmann::json(s).dump() + (p == Lebesgue::two ? "_p2" : "_pinf");
}

MHDState linear_flow(const MHDState& st, const PhysicalParams& prm, double t) {
  if (t < 0.0) throw std::invalid_argument("linear_flow: negative time");
  const PhiTables tab = build_tables(st.grid(), st.regime, st.eps, prm, t, false);
  return with_fields(st, apply(tab.e, fields_of(st)), st.t + t);
}

struct Stepper::Impl {
  Regime regime;
  double eps;
  PhysicalParams prm;
  StepperConfig cfg;
  PhiTables half;
  PhiTables full;
};

Stepper::Stepper(const Grid& g, Regime regime, double eps, const PhysicalParams& prm,
                 const StepperConfig& cfg)
    : impl_(std::make_unique<Impl>()) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("stepper requires dt > 0");
  impl_->regime = regime;
  impl_->eps = eps;
  impl_->prm = prm;
  impl_->cfg = cfg;
  if (cfg.scheme == Scheme::strang_rk4) {
    impl_->half = build_tables(g, regime, eps, prm, 0.5 * cfg.dt, false);
  } else {
    impl_->full = build_tables(g, regime, eps, prm, cfg.dt, true);
  }
}

Stepper::~Stepper() = default;
Stepper::Stepper(Stepper&&) noexcept = default;

Tendency Stepper::nonlinear(const MHDState& st) const {
  return truncate(split_rhs(st, impl_->prm, impl_->cfg).nonstiff, impl_->cfg.truncation);
}

MHDState Stepper::step(const MHDState& st) const {
  const double h = impl_->cfg.dt;
  auto N = [&](const Tendency& y) { return nonlinear(with_fields(st, y, st.t)); };
  auto advance = [&]() -> Tendency {
    if (impl_->cfg.scheme == Scheme::strang_rk4) {
      const Tendency y0 = apply(impl_->half.e, fields_of(st));
      const Tendency k1 = N(y0);
      const Tendency k2 = N(combine(y0, 0.5 * h, k1));
      const Tendency k3 = N(combine(y0, 0.5 * h, k2));
      const Tendency k4 = N(combine(y0, h, k3));
      Tendency y1 = y0;
      axpy(y1, h / 6.0, k1);
      axpy(y1, h / 3.0, k2);
      axpy(y1, h / 3.0, k3);
      axpy(y1, h / 6.0, k4);
      return apply(impl_->half.e, y1);
    }
    // Cox–Matthews ETD2.
    const Tendency y0 = fields_of(st);
    const Tendency n0 = N(y0);
    Tendency a = apply(impl_->full.e, y0);
    axpy(a, h, apply(impl_->full.phi1, n0));
    const Tendency n1 = N(a);
    axpy(a, h, apply(impl_->full.phi2, combine(n1, -1.0, n0)));
    return a;
  };
  Tendency y = advance();
  y.H = leray_project(y.H);
  if (st.regime == Regime::incompressible) y.u = leray_project(y.u);
  const double t = st.t + h;
  if (!finite(y)) throw BlowupError(t);
  return with_fields(st, std::move(y), t);
}

MHDState step(const MHDState& st, const PhysicalParams& prm, const StepperConfig& cfg) {
  return Stepper(st.grid(), st.regime, st.eps, prm, cfg).step(st);
}

double inf_density(const MHDState& st) {
  if (st.regime == Regime::incompressible) return 1.0;
  return 1.0 + st.density_scale() * to_physical(st.density).values.minCoeff();
}

double energy(const MHDState& st, const PhysicalParams& prm) {
  const Grid& g = st.grid();
  const Eigen::ArrayXXd u = to_physical(st.u).values;
  const Eigen::ArrayXXd H = to_physical(st.H).values;
  const Eigen::ArrayXd u2 = u.square().rowwise().sum();
  const Eigen::ArrayXd H2 = H.square().rowwise().sum();
  if (st.regime == Regime::incompressible) return volume_integral(0.5 * (u2 + H2), g);
  const double s = st.density_scale();
  const Eigen::ArrayXd rho = 1.0 + s * to_physical(st.density).values.col(0);
  const Eigen::ArrayXd pi = rho.unaryExpr([&](double r) { return pressure_potential(prm, r); });
  return volume_integral(0.5 * rho * u2 + 0.5 * H2 + pi / (s * s), g);
}

double dissipation(const MHDState& st, const PhysicalParams& prm) {
  const Grid& g = st.grid();
  const auto& k = g.wavevectors();
  double grad_u = 0.0, grad_H = 0.0, div_u = 0.0;
  for (int c = 0; c < g.dim(); ++c) {
    grad_u += (g.k2() * st.u.coeffs().col(c).abs2()).sum();
    grad_H += (g.k2() * st.H.coeffs().col(c).abs2()).sum();
  }
  Eigen::ArrayXcd kdotu = Eigen::ArrayXcd::Zero(g.modes());
  for (int a = 0; a < g.dim(); ++a) kdotu += k.col(a) * st.u.coeffs().col(a);
  div_u = kdotu.abs2().sum();
  const double mu_lambda = st.regime == Regime::incompressible ? 0.0 : prm.mu + prm.lambda;
  return g.volume() * (prm.mu * grad_u + mu_lambda * div_u + prm.nu * grad_H);
}

Diagnostics diagnose(const MHDState& st, const PhysicalParams& prm,
                     const std::vector<NormRequest>& norms) {
  const double s = static_cast<double>(st.grid().dim()) / 2.0;
  Diagnostics d;
  d.t = st.t;
  d.energy = energy(st, prm);
  d.dissipation = dissipation(st, prm);
  d.inf_density = inf_density(st);
  d.mass = st.density.mean().real();
  d.div_u = divergence_norm(st.u);
  d.div_H = divergence_norm(st.H);
  d.grad_u = gradient_besov_norm(st.u, s);
  d.grad_H = gradient_besov_norm(st.H, s);
  for (const NormRequest& r : norms) {
    d.norms.emplace_back(r.key(), besov_norm(field_by_name(st, r.field), {r.s, r.p}));
  }
  return d;
}

std::string Diagnostics::to_json() const {
  nlohmann::ordered_json j;
  j["t"] = t;
  j["energy"] = energy;
  j["dissipation"] = dissipation;
  j["energy_residual"] = energy_residual;
  j["inf_density"] = inf_density;
  j["mass"] = mass;
  j["div_u"] = div_u;
  j["div_H"] = div_H;
  j["grad_u"] = grad_u;
  j["grad_H"] = grad_H;
  nlohmann::ordered_json n = nlohmann::ordered_json::object();
  for (const auto& [key, value] : norms) n[key] = value;
  j["norms"] = n;
  return j.dump();
}

RunResult run(const MHDState& init, const PhysicalParams& prm, const StepperConfig& cfg,
              double T) {
  prm.validate();
  if (!(T >= 0.0)) throw std::invalid_argument("run: horizon must be >= 0");
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("run: dt must be > 0");
  if (cfg.save_stride < 1) throw std::invalid_argument("run: save stride must be >= 1");
  RunResult out;
  MHDState cur = init;
  if (cfg.truncation >= 1) {
    cur = with_fields(init, truncate(fields_of(init), cfg.truncation), init.t);
  }
  out.trajectory.push_back(cur);
  if (T == 0.0) return out;

  const long steps = std::max(1L, static_cast<long>(std::ceil(T / cfg.dt - 1e-9)));
  StepperConfig c = cfg;
  c.dt = T / static_cast<double>(steps);
  const Stepper stepper(cur.grid(), cur.regime, cur.eps, prm, c);

  Diagnostics prev = diagnose(cur, prm, cfg.norms);
  const double scale = prev.energy > 0.0 ? prev.energy : 1.0;
  double int_u = 0.0, int_H = 0.0;
  for (long i = 1; i <= steps; ++i) {
    MHDState next = cur;
    try {
      next = stepper.step(cur);
    } catch (const VacuumError& e) {
      out.status = RunStatus::vacuum;
      out.reason = std::string(e.what()) + " at t = " + std::to_string(cur.t);
      break;
    } catch (const BlowupError& e) {
      out.status = RunStatus::blowup;
      out.reason = e.what();
      break;
    }
    next.t = init.t + T * static_cast<double>(i) / static_cast<double>(steps);
    Diagnostics d = diagnose(next, prm, cfg.norms);
    d.energy_residual = (d.energy - prev.energy) / c.dt + 0.5 * (d.dissipation + prev.dissipation);
    out.max_energy_residual = std::max(out.max_energy_residual, std::abs(d.energy_residual) / scale);
    out.max_div = std::max(out.max_div, d.div_H);
    if (cur.regime == Regime::incompressible) out.max_div = std::max(out.max_div, d.div_u);
    int_u += 0.5 * c.dt * (d.grad_u + prev.grad_u);
    int_H += 0.5 * c.dt * (d.grad_H + prev.grad_H);

    if (int_u > cfg.gradient_limit) {
      out.status = RunStatus::gradient_blowup_u;
    } else if (int_H > cfg.gradient_limit) {
      out.status = RunStatus::gradient_blowup_H;
    } else if (d.inf_density < cfg.vacuum_floor) {
      out.status = RunStatus::vacuum;
    }
    const bool abort = out.status != RunStatus::completed;
    if (abort) out.reason = to_string(out.status) + " at t = " + std::to_string(next.t);
    if (abort || i % cfg.save_stride == 0 || i == steps) {
      out.trajectory.push_back(next);
      out.series.push_back(d);
    }
    if (abort) break;
    cur = std::move(next);
    prev = std::move(d);
  }
  return out;
}

}  // namespace mhdlab
