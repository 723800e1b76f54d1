#include "support.hpp"

#include "mhdlab/acoustic.hpp"
#include "mhdlab/continuation.hpp"
#include "mhdlab/initial_data.hpp"
#include "mhdlab/lifespan.hpp"
#include "mhdlab/operators.hpp"
#include "mhdlab/profiles.hpp"

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace mhdlab;
using mhdlab::testing::cosine_mode;
using mhdlab::testing::random_field;
using mhdlab::testing::rel;
using mhdlab::testing::rel_l2;

namespace {

const double kTwoPi = 2.0 * std::numbers::pi;

double max_abs(const Tendency& t) {
  return std::max({t.density.coeffs().abs().maxCoeff(), t.u.coeffs().abs().maxCoeff(),
                   t.H.coeffs().abs().maxCoeff()});
}

// Solenoidal single mode: ê ⊥ n, amplitude·ê cos(n·x).
SpectralField solenoidal_mode(const Grid& g, Eigen::Array3i n, double amplitude) {
  SpectralField v(g, 2);
  const double len = std::hypot(n(0), n(1));
  v.coeffs().col(0) = cosine_mode(g, n, -amplitude * n(1) / len).coeffs().col(0);
  v.coeffs().col(1) = cosine_mode(g, n, amplitude * n(0) / len).coeffs().col(0);
  return v;
}

SpectralField random_potential(const Grid& g, std::mt19937_64& rng, double kmax, double amp) {
  return leray_perp(random_band(g, g.dim(), rng, g.dk(), kmax, amp));
}

double state_distance(const MHDState& a, const MHDState& b) {
  return std::sqrt(std::pow((a.density - b.density).l2_norm(), 2) +
                   std::pow((a.u - b.u).l2_norm(), 2) + std::pow((a.H - b.H).l2_norm(), 2));
}

// Smooth compressible data of moderate size on a few low modes.
MHDState smooth_compressible(const Grid& g, std::uint64_t seed, double amp, int bands = 3) {
  std::mt19937_64 rng = stream_rng(seed, 0);
  const double kmax = bands * g.dk();
  SpectralField a = random_band(g, 1, rng, g.dk(), kmax, amp);
  SpectralField u = random_band(g, g.dim(), rng, g.dk(), kmax, amp);
  SpectralField H = random_band(g, g.dim(), rng, g.dk(), kmax, amp, true);
  return MHDState::compressible(a, u, H);
}

}  // namespace

TEST_CASE("constitutive functions") {
  const PhysicalParams prm;
  CHECK(inertia_factor(0.0) == 0.0);
  CHECK(pressure_defect(prm, 0.0) == 0.0);
  for (double z : {-0.5, -1e-9, 1e-9, 0.3, 2.0}) {
    CHECK(rel(pressure_defect(prm, z) + prm.sound_speed2(), pressure_gradient_factor(prm, z)) < 1e-13);
    const double h = 1e-5, r = 1.0 + z;
    const double dpi = (pressure_potential(prm, r + h) - pressure_potential(prm, r - h)) / (2 * h);
    CHECK(std::abs(r * dpi - pressure_potential(prm, r) - (prm.pressure(r) - prm.pressure(1.0))) < 1e-8);
  }
  PhysicalParams bad = prm;
  bad.gamma = 0.5;
  CHECK_THROWS_WITH(bad.validate(), "pressure law requires gamma > 1");
  bad = prm;
  bad.lambda = -0.3;
  CHECK_THROWS_WITH(bad.validate(), "viscosity requires 2mu + lambda > 0");
}

TEST_CASE("compressible equilibrium and magnetic tendency") {
  const Grid g(2, 32, kTwoPi);
  const PhysicalParams prm;
  SpectralField a(g, 1);
  a.coeffs()(0, 0) = 0.3;
  const MHDState eq = MHDState::compressible(a, SpectralField(g, 2), SpectralField(g, 2));
  CHECK(max_abs(rhs_compressible(eq, prm)) == 0.0);

  const SpectralField H = solenoidal_mode(g, {2, 1, 0}, 0.8) + solenoidal_mode(g, {-1, 3, 0}, 0.5);
  const MHDState st = MHDState::compressible(SpectralField(g, 1), SpectralField(g, 2), H);
  const Tendency t = rhs_compressible(st, prm);
  // Hand assembly: H·∇H − ½∇|H|² from separate products.
  SpectralField expected(g, 2);
  for (int a2 = 0; a2 < 2; ++a2) {
    expected += product(H.component_field(a2), partial(H, a2));
    expected -= product(H.component_field(a2), grad(H.component_field(a2)));
  }
  CHECK(rel_l2(t.u, expected) < 1e-13);
  CHECK(rel_l2(t.H, prm.nu * laplacian(H)) < 1e-14);
  CHECK(t.density.l2_norm() == 0.0);

  SpectralField deep(g, 1);
  deep.coeffs()(g.mode_index({1, 0, 0}), 0) = 0.48;
  deep.coeffs()(g.mode_index({-1, 0, 0}), 0) = 0.48;
  const MHDState vac = MHDState::compressible(deep, SpectralField(g, 2), SpectralField(g, 2));
  CHECK_THROWS_WITH(rhs_compressible(vac, prm), "approach to vacuum");
  CHECK_THROWS_AS(rhs_scaled(vac, prm), std::invalid_argument);
}

TEST_CASE("linearized compressible dispersion matches a dense-matrix oracle") {
  const Grid g(2, 32, kTwoPi);
  PhysicalParams prm;
  prm.lambda = 0.05;
  const double delta = 1e-6;
  const std::vector<Eigen::Array3i> modes = {
      {1, 0, 0}, {0, 1, 0}, {1, 1, 0},  {2, -1, 0}, {3, 0, 0},  {2, 3, 0},  {-4, 1, 0},
      {5, 2, 0}, {0, 6, 0}, {6, -3, 0}, {7, 7, 0},  {-8, 2, 0}, {9, -1, 0}, {4, 10, 0},
      {1, -2, 0}, {3, 3, 0}, {-5, 5, 0}, {10, 0, 0}, {2, 8, 0}, {-7, -4, 0}};
  REQUIRE(modes.size() == 20);
  for (const Eigen::Array3i& n : modes) {
    const Eigen::Index m = g.mode_index(n);
    const Eigen::Index mc = g.mode_index(-n);
    Eigen::Matrix<Complex, 5, 5> J;
    for (int col = 0; col < 5; ++col) {
      auto perturbed = [&](double sign) {
        MHDState st = MHDState::compressible(SpectralField(g, 1), SpectralField(g, 2),
                                             SpectralField(g, 2));
        SpectralField& f = col == 0 ? st.density : (col < 3 ? st.u : st.H);
        const int c = col == 0 ? 0 : (col - 1) % 2;
        f.coeffs()(m, c) += sign * delta;
        f.coeffs()(mc, c) += sign * delta;
        return rhs_compressible(st, prm);
      };
      const Tendency p = perturbed(1.0), q = perturbed(-1.0);
      J(0, col) = (p.density.coeffs()(m, 0) - q.density.coeffs()(m, 0)) / (2 * delta);
      for (int c = 0; c < 2; ++c) {
        J(1 + c, col) = (p.u.coeffs()(m, c) - q.u.coeffs()(m, c)) / (2 * delta);
        J(3 + c, col) = (p.H.coeffs()(m, c) - q.H.coeffs()(m, c)) / (2 * delta);
      }
    }
    // Oracle: linearization of the PDE about rest.
    const Eigen::Vector2d k(n(0) * g.dk(), n(1) * g.dk());
    const double k2 = k.squaredNorm();
    const Complex I(0, 1);
    Eigen::Matrix<Complex, 5, 5> L = Eigen::Matrix<Complex, 5, 5>::Zero();
    for (int a2 = 0; a2 < 2; ++a2) {
      L(0, 1 + a2) = -I * k(a2);
      L(1 + a2, 0) = -I * prm.sound_speed2() * k(a2);
      for (int b = 0; b < 2; ++b) L(1 + a2, 1 + b) = -(prm.mu + prm.lambda) * k(a2) * k(b);
      L(1 + a2, 1 + a2) -= prm.mu * k2;
      L(3 + a2, 3 + a2) = -prm.nu * k2;
    }
    Eigen::ComplexEigenSolver<Eigen::Matrix<Complex, 5, 5>> ej(J), el(L);
    std::vector<Complex> ev(ej.eigenvalues().data(), ej.eigenvalues().data() + 5);
    std::vector<Complex> ov(el.eigenvalues().data(), el.eigenvalues().data() + 5);
    for (const Complex& o : ov) {
      auto it = std::min_element(ev.begin(), ev.end(), [&](Complex x, Complex y) {
        return std::abs(x - o) < std::abs(y - o);
      });
      CHECK(std::abs(*it - o) <= 1e-6 * std::abs(o));
      ev.erase(it);
    }
    // The acoustic pair: −ν̄k²/2 ± i(P′(1)k² − ν̄²k⁴/4)^{1/2}.
    const Complex acoustic =
        -prm.nu_bar() * k2 / 2 + I * std::sqrt(Complex(prm.sound_speed2() * k2 - std::pow(prm.nu_bar() * k2 / 2, 2)));
    double best = INFINITY;
    for (int i = 0; i < 5; ++i) best = std::min(best, std::abs(el.eigenvalues()(i) - acoustic));
    CHECK(best <= 1e-12 * std::abs(acoustic));
  }
}

TEST_CASE("scaled splitting") {
  const Grid g(2, 32, kTwoPi);
  PhysicalParams prm;
  std::mt19937_64 rng(5);
  const SpectralField u = random_band(g, 2, rng, 1.0, 5.0, 0.5, true);
  const MHDState st = MHDState::scaled(SpectralField(g, 1), u, SpectralField(g, 2), 0.05);
  const SplitTendency s = rhs_scaled(st, prm);
  CHECK(s.stiff.density.coeffs().abs().maxCoeff() < 1e-14);
  CHECK(rel_l2(s.stiff.u, prm.mu * laplacian(u)) < 1e-14);
  CHECK(rel_l2(s.stiff.u + s.nonstiff.u, prm.mu * laplacian(u) - advection(u, u)) < 1e-13);

  // Nonstiff tendencies depend on ε only at O(ε).
  const SpectralField b = random_band(g, 1, rng, 1.0, 5.0, 1.0);
  const SpectralField H = random_band(g, 2, rng, 1.0, 5.0, 0.5, true);
  const SpectralField w = u + random_potential(g, rng, 5.0, 0.5);
  auto diff = [&](double e1, double e2) {
    const Tendency t1 = rhs_scaled(MHDState::scaled(b, w, H, e1), prm).nonstiff;
    const Tendency t2 = rhs_scaled(MHDState::scaled(b, w, H, e2), prm).nonstiff;
    return (t1.u - t2.u).l2_norm() + (t1.H - t2.H).l2_norm() + (t1.density - t2.density).l2_norm();
  };
  const double d1 = diff(1e-2, 2e-2);
  const double d2 = diff(1e-3, 2e-3);
  CHECK(d1 > 0.0);
  CHECK(d2 <= 0.12 * d1);
}

TEST_CASE("scaled linear flow matches the acoustic propagator") {
  const Grid g(2, 32, kTwoPi);
  PhysicalParams prm;
  prm.mu = prm.lambda = prm.nu = 0.0;
  std::mt19937_64 rng(9);
  const double eps = 0.05;
  const SpectralField b = random_band(g, 1, rng, 1.0, 8.0, 1.0);
  const SpectralField u = random_potential(g, rng, 8.0, 1.0);
  const MHDState st = MHDState::scaled(b, u, SpectralField(g, 2), eps);
  const double c = std::sqrt(prm.sound_speed2());
  for (double t : {0.013, 0.2, 1.7}) {
    const MHDState out = linear_flow(st, prm, t);
    const AcousticState ac =
        acoustic_flow(AcousticState{b, (1.0 / c) * lambda_power(div(u), -1.0), eps}, t, std::nullopt, c);
    CHECK(rel_l2(out.density, ac.b) < 1e-10);
    CHECK(rel_l2((1.0 / c) * lambda_power(div(out.u), -1.0), ac.psi) < 1e-10);
    CHECK(leray_project(out.u).l2_norm() < 1e-12);
  }
}

TEST_CASE("incompressible tendencies") {
  const Grid g(2, 64, kTwoPi);
  PhysicalParams prm;
  prm.mu = prm.nu = 0.1;
  const SpectralField tg = taylor_green(g);
  const Tendency t = rhs_incompressible(MHDState::incompressible(tg, SpectralField(g, 2)), prm);
  // ∂_t v of the exact solution is −2μκ²v.
  CHECK((t.u + 2.0 * prm.mu * tg).l2_norm() <= 1e-12 * tg.l2_norm());

  const MHDState sym = symmetric_uB(g, 3, 1.0, 6.0);
  const SplitTendency s = split_rhs(sym, prm, {});
  CHECK(s.nonstiff.u.l2_norm() < 1e-14 * sym.u.l2_norm());
  CHECK(s.nonstiff.H.l2_norm() < 1e-14 * sym.u.l2_norm());

  CHECK(max_abs(rhs_incompressible(MHDState::incompressible(SpectralField(g, 2), SpectralField(g, 2)), prm)) == 0.0);
  std::mt19937_64 rng(1);
  const SpectralField bad = random_band(g, 2, rng, 1.0, 4.0, 1.0);
  CHECK_THROWS_AS(rhs_incompressible(MHDState::incompressible(bad, SpectralField(g, 2)), prm),
                  std::invalid_argument);
}

TEST_CASE("one step of pure heat data") {
  const Grid g(2, 32, kTwoPi);
  PhysicalParams prm;
  prm.mu = 0.1;
  prm.nu = 0.07;
  const Eigen::Array3i n{3, 2, 0};
  // The magnetic pressure ½∇|H|² is the largest quadratic term; its relative
  // size after one step is ~amp·|k|·dt.
  const SpectralField v = solenoidal_mode(g, n, 1e-10);
  const double k2 = 13.0;
  StepperConfig cfg;
  cfg.dt = 1e-2;
  for (Scheme sc : {Scheme::strang_rk4, Scheme::etd_rk2}) {
    cfg.scheme = sc;
    const MHDState out = step(MHDState::compressible(SpectralField(g, 1), v, v), prm, cfg);
    CHECK(rel_l2(out.u, std::exp(-prm.mu * k2 * cfg.dt) * v) < 1e-10);
    CHECK(rel_l2(out.H, std::exp(-prm.nu * k2 * cfg.dt) * v) < 1e-10);
    CHECK(out.t == cfg.dt);
  }
}

TEST_CASE("mass and solenoidality over ten thousand steps") {
  const Grid g(2, 16, kTwoPi);
  const PhysicalParams prm;
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.save_stride = 10000;
  const MHDState init = smooth_compressible(g, 4, 0.2);
  const RunResult r = run(init, prm, cfg, 10.0);
  REQUIRE(r.status == RunStatus::completed);
  CHECK(r.trajectory.size() == 2);
  CHECK(std::abs(r.trajectory.back().density.mean().real() - init.density.mean().real()) <= 1e-13);
  CHECK(r.max_div <= 1e-10);
}

TEST_CASE("strang splitting is second order") {
  const Grid g(2, 16, kTwoPi);
  const PhysicalParams prm;
  std::mt19937_64 rng(8);
  const SpectralField b = random_band(g, 1, rng, 1.0, 3.0, 0.5);
  const SpectralField u = random_band(g, 2, rng, 1.0, 3.0, 0.5);
  const SpectralField H = random_band(g, 2, rng, 1.0, 3.0, 0.5, true);
  const MHDState init = MHDState::scaled(b, u, H, 0.3);
  const double T = 0.2;
  auto end_state = [&](double dt) {
    StepperConfig cfg;
    cfg.dt = dt;
    cfg.save_stride = 1000000;
    return run(init, prm, cfg, T).trajectory.back();
  };
  const double dt = 0.02;
  const MHDState ref = end_state(dt / 16);
  const double e1 = state_distance(end_state(dt), ref);
  const double e2 = state_distance(end_state(dt / 2), ref);
  const double order = std::log2(e1 / e2);
  MESSAGE("strang order " << order);
  CHECK(order >= 1.8);
  CHECK(order <= 2.2);
}

TEST_CASE("run bookkeeping") {
  const Grid g(2, 16, kTwoPi);
  const PhysicalParams prm;
  const MHDState init = smooth_compressible(g, 2, 0.1);
  StepperConfig cfg;
  const RunResult zero = run(init, prm, cfg, 0.0);
  CHECK(zero.trajectory.size() == 1);
  CHECK(zero.series.empty());

  cfg.dt = 0.01;
  cfg.save_stride = 3;
  cfg.norms = {{"u", 0.0, Lebesgue::two}, {"density", 1.0, Lebesgue::inf}};
  const RunResult r = run(init, prm, cfg, 0.1);
  CHECK(r.status == RunStatus::completed);
  CHECK(r.series.size() == 4);  // steps 3, 6, 9 and the final one
  CHECK(r.trajectory.size() == r.series.size() + 1);
  CHECK(r.trajectory.back().t == doctest::Approx(0.1).epsilon(1e-15));
  const auto j = nlohmann::json::parse(r.series.front().to_json());
  CHECK(j.at("norms").size() == 2);
  CHECK(j.at("t").get<double>() == r.series.front().t);

  // Approaching vacuum ends the run with a partial trajectory.
  SpectralField a = cosine_mode(g, {1, 0, 0}, -0.85);
  SpectralField u = sample(g, 2, [](const double* x, double* o) {
    o[0] = std::sin(x[0]);
    o[1] = 0.0;
  });
  cfg.save_stride = 1;
  const RunResult v = run(MHDState::compressible(a, 2.0 * u, SpectralField(g, 2)), prm, cfg, 1.0);
  CHECK(v.status == RunStatus::vacuum);
  CHECK(v.reason.find("vacuum") != std::string::npos);
  CHECK(v.trajectory.back().t < 1.0);

  cfg.gradient_limit = 1e-3;
  const RunResult gb = run(init, prm, cfg, 0.1);
  CHECK((gb.status == RunStatus::gradient_blowup_u || gb.status == RunStatus::gradient_blowup_H));
}

TEST_CASE("exact nonlinear solutions") {
  const Grid g(2, 64, kTwoPi);
  PhysicalParams prm;
  prm.mu = prm.nu = 0.1;
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.save_stride = 100000;
  const double T = 0.5;

  const SpectralField tg = taylor_green(g);
  const RunResult a = run(MHDState::incompressible(tg, SpectralField(g, 2)), prm, cfg, T);
  REQUIRE(a.status == RunStatus::completed);
  CHECK(rel_l2(a.trajectory.back().u, taylor_green_decay(g, prm.mu, T) * tg) <= 1e-4);

  const MHDState sym = symmetric_uB(g, 11, 1.0, 8.0);
  const RunResult b = run(sym, prm, cfg, T);
  REQUIRE(b.status == RunStatus::completed);
  const SpectralField exact = heat_flow(sym.u, prm.mu, T);
  CHECK(rel_l2(b.trajectory.back().u, exact) <= 1e-4);
  CHECK(rel_l2(b.trajectory.back().H, exact) <= 1e-4);
  CHECK(b.max_div <= 1e-10);
}

TEST_CASE("energy balance residual") {
  const Grid g(2, 64, kTwoPi);
  const PhysicalParams prm;
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.save_stride = 100000;
  // The trapezoid rule on D makes the residual O(dt²), dominated by the
  // acoustic oscillation of D at frequency ~2c|k|.
  const RunResult r = run(smooth_compressible(g, 6, 0.3, 2), prm, cfg, 0.05);
  REQUIRE(r.status == RunStatus::completed);
  MESSAGE("energy residual " << r.max_energy_residual);
  CHECK(r.max_energy_residual <= 1e-6);
}

TEST_CASE("friedrichs truncation is inactive above the grid band") {
  const Grid g(2, 16, kTwoPi);
  const PhysicalParams prm;
  const MHDState init = smooth_compressible(g, 7, 0.2);
  StepperConfig cfg;
  cfg.dt = 0.01;
  cfg.save_stride = 1;
  cfg.truncation = static_cast<int>(std::ceil(g.max_k()));
  const RunResult a = run(init, prm, cfg, 0.2);
  cfg.truncation *= 2;
  const RunResult b = run(init, prm, cfg, 0.2);
  REQUIRE(a.trajectory.size() == b.trajectory.size());
  for (std::size_t i = 0; i < a.trajectory.size(); ++i) {
    CHECK(state_distance(a.trajectory[i], b.trajectory[i]) <= 1e-12);
  }
  // An active truncation removes the band above n.
  cfg.truncation = 3;
  const RunResult c = run(init, prm, cfg, 0.05);
  const MHDState& last = c.trajectory.back();
  for (Eigen::Index m = 0; m < g.modes(); ++m) {
    if (g.kabs()(m) > 3.0) CHECK(std::abs(last.H.coeffs()(m, 0)) == 0.0);
  }
}

TEST_CASE("acoustic oscillation period in the scaled regime") {
  const Grid g(2, 32, kTwoPi);
  const PhysicalParams prm;
  const double eps = 0.05;
  const Eigen::Array3i n{2, 0, 0};
  const MHDState init = MHDState::scaled(cosine_mode(g, n, 0.1), SpectralField(g, 2),
                                         SpectralField(g, 2), eps);
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.save_stride = 1;
  const double c = std::sqrt(prm.sound_speed2());
  const double period = kTwoPi * eps / (2.0 * c);
  const RunResult r = run(init, prm, cfg, 4.0 * period);
  REQUIRE(r.status == RunStatus::completed);
  std::vector<double> t, e, bk;
  for (const MHDState& st : r.trajectory) {
    t.push_back(st.t);
    e.push_back(std::pow(st.density.l2_norm(), 2) + std::pow(leray_perp(st.u).l2_norm(), 2));
    bk.push_back(st.density.coeffs()(g.mode_index(n), 0).real());
  }
  // Spectral peak of a sampled series over a frequency scan.
  // A linear trend (viscous decay) is removed first.
  auto peak = [&](const std::vector<double>& y) {
    const Eigen::Index m = static_cast<Eigen::Index>(y.size());
    Eigen::MatrixXd X(m, 2);
    Eigen::VectorXd Y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      X(i, 0) = 1.0;
      X(i, 1) = t[i];
      Y(i) = y[i];
    }
    const Eigen::VectorXd detrended = Y - X * X.colPivHouseholderQr().solve(Y);
    double best = 0.0, arg = 0.0;
    for (double w = 10.0; w <= 200.0; w += 0.01) {
      Complex s = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) s += detrended(i) * std::exp(Complex(0, -w * t[i]));
      if (std::abs(s) > best) {
        best = std::abs(s);
        arg = w;
      }
    }
    return kTwoPi / arg;
  };
  // The field oscillates with the acoustic period; the energy exchange
  // between b and 𝒫⊥u (P′(1) ≠ 1) has half of it.
  CHECK(rel(peak(bk), period) < 0.02);
  CHECK(rel(peak(e), period / 2) < 0.02);
}

TEST_CASE("lifespan lower bound") {
  const Grid g(2, 32, kTwoPi);
  const PhysicalParams prm;
  const double alpha = 0.5;
  const LifespanConstants k;
  const double amp = 0.3;
  // a₀ = amp·cos(4x) sits in shell 2 with ‖a₀‖_{L²} = amp·|box|^{1/2}/√2.
  const SpectralField a0 = cosine_mode(g, {4, 0, 0}, amp);
  const MHDState st = MHDState::compressible(a0, SpectralField(g, 2), SpectralField(g, 2));
  const LifespanBound lb = lifespan_lower_bound(st, prm, alpha, k);
  const double l2 = amp * std::sqrt(g.volume() / 2.0);
  const double A = std::pow(2.0, 2 * 1.0) * l2 + std::pow(2.0, 2 * (1.0 + alpha)) * l2;
  CHECK(rel(lb.A, A) < 1e-12);
  const double closed = k.c * std::min(std::pow(1 + A, -2.0), std::pow(1 + A, -2.0 / alpha));
  CHECK(rel(lb.T, closed) < 1e-10);
  CHECK(std::isinf(lb.t_nonlinear));
  CHECK(std::isinf(lb.t_heat));

  std::mt19937_64 rng(3);
  const SpectralField u0 = random_band(g, 2, rng, 1.0, 6.0, 0.05);
  double prev = INFINITY;
  for (int i = 1; i <= 10; ++i) {
    const LifespanBound b = lifespan_lower_bound(
        MHDState::compressible(0.1 * i * a0, u0, SpectralField(g, 2)), prm, alpha, k);
    CHECK(b.T < prev);
    prev = b.T;
  }

  // Single-shell u₀: the heat condition solves in closed form.
  const Eigen::Array3i n{5, 0, 0};  // shell 2
  const SpectralField us = solenoidal_mode(g, n, 2.0);
  const LifespanBound hb = lifespan_lower_bound(
      MHDState::compressible(SpectralField(g, 1), us, SpectralField(g, 2)), prm, alpha, k);
  const int j = 2;
  const double w = std::pow(2.0, j * (alpha)) * us.l2_norm();
  const double root = -std::log1p(-hb.threshold / w) / (k.kappa * prm.nu_bar() * std::pow(4.0, j));
  CHECK(rel(hb.t_heat, root) < 1e-10);

  // Incompressible variant against Newton iteration on the two-shell sum.
  const SpectralField v0 = solenoidal_mode(g, {3, 0, 0}, 0.05);  // shell 1
  const SpectralField B0 = solenoidal_mode(g, {0, 9, 0}, 0.02);  // shell 3
  const LifespanBound ib = lifespan_lower_bound(MHDState::incompressible(v0, B0), prm, alpha, k);
  const double r1 = k.kappa * prm.nu_min() * 4.0, r3 = k.kappa * prm.nu_min() * 64.0;
  const double n1 = v0.l2_norm(), n3 = B0.l2_norm();
  auto F = [&](double T) {
    return std::sqrt(-std::expm1(-r1 * T)) * n1 + std::sqrt(-std::expm1(-r3 * T)) * n3 - k.c;
  };
  double T = 1e-6;
  for (int i = 0; i < 100; ++i) {
    const double h = 1e-7 * T;
    T -= F(T) / ((F(T + h) - F(T - h)) / (2 * h));
  }
  REQUIRE(std::abs(F(T)) < 1e-12);
  CHECK(rel(ib.T, T) < 1e-8);
}

TEST_CASE("continuation monitor") {
  const Grid g(2, 16, kTwoPi);
  SpectralField a(g, 1);
  a.coeffs()(0, 0) = 0.2;
  std::vector<MHDState> eq;
  for (int i = 0; i < 4; ++i) {
    eq.push_back(MHDState::compressible(a, SpectralField(g, 2), SpectralField(g, 2), 0.1 * i));
  }
  const ContinuationReport r = continuation_monitor(eq);
  CHECK(r.status == ContinuationStatus::continuable);
  CHECK(r.integral_u == 0.0);
  CHECK(r.integral_H == 0.0);
  CHECK(r.time == doctest::Approx(0.3));

  std::vector<MonitorSample> vac;
  for (int i = 0; i <= 10; ++i) vac.push_back({0.1 * i, 0.0, 0.0, 1.0 - 0.1 * i});
  const ContinuationReport v = continuation_monitor(vac);
  CHECK(v.status == ContinuationStatus::vacuum);
  CHECK(v.time == doctest::Approx(0.9));

  // ‖∇u‖ = 2t integrates to t², so the limit 0.3 is reached at √0.3.
  std::vector<MonitorSample> grow;
  for (int i = 0; i <= 10; ++i) grow.push_back({0.1 * i, 0.2 * i, 0.01, 1.0});
  MonitorThresholds th;
  th.gradient_integral = 0.3;
  const ContinuationReport gb = continuation_monitor(grow, th);
  CHECK(gb.status == ContinuationStatus::gradient_blowup_u);
  CHECK(rel(gb.time, std::sqrt(0.3)) < 1e-12);
  CHECK_THROWS(continuation_monitor(std::vector<MonitorSample>{grow.front()}));
}
