#include "mhdlab/lowmach.hpp"

#include "mhdlab/besov.hpp"
#include "mhdlab/operators.hpp"
#include "mhdlab/parallel.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mhdlab {

namespace {

using Shells = std::map<int, double>;

// Shell norms of one sample; every functional is a weighted sum of these.
struct SampleShells {
  Shells w, B_err, v, B, perp, b;
  Shells perp_inf, b_inf;
};

void require_matching(const std::vector<MHDState>& traj_eps, const std::vector<MHDState>& traj_limit) {
  if (traj_eps.empty()) throw std::invalid_argument("functionals: empty trajectory");
  if (traj_eps.size() != traj_limit.size()) {
    throw std::invalid_argument("functionals: trajectories have different numbers of saves");
  }
  const Grid& g = traj_eps.front().grid();
  for (std::size_t n = 0; n < traj_eps.size(); ++n) {
    const MHDState& a = traj_eps[n];
    const MHDState& l = traj_limit[n];
    if (a.regime != Regime::scaled) throw std::invalid_argument("functionals: traj_eps must be scaled");
    if (l.regime != Regime::incompressible) {
      throw std::invalid_argument("functionals: traj_limit must be incompressible");
    }
    if (a.eps != traj_eps.front().eps) throw std::invalid_argument("functionals: eps changes along traj_eps");
    require_same_grid(a.grid(), g, "functionals");
    require_same_grid(l.grid(), g, "functionals");
    if (std::abs(a.t - l.t) > 1e-12 * std::max(1.0, std::abs(a.t))) {
      throw std::invalid_argument("functionals: save times differ");
    }
    if (n > 0 && !(a.t > traj_eps[n - 1].t)) throw std::invalid_argument("functionals: save times must increase");
  }
}

SampleShells shells_of(const MHDState& st, const MHDState& lim) {
  const LeraySplit u = leray(st.u);
  return SampleShells{shell_norms(u.solenoidal - lim.u, Lebesgue::two),
                      shell_norms(st.H - lim.H, Lebesgue::two),
                      shell_norms(lim.u, Lebesgue::two),
                      shell_norms(lim.H, Lebesgue::two),
                      shell_norms(u.potential, Lebesgue::two),
                      shell_norms(st.density, Lebesgue::two),
                      shell_norms(u.potential, Lebesgue::inf),
                      shell_norms(st.density, Lebesgue::inf)};
}

// Running sup and trapezoid integral of a sampled quantity.
struct Running {
  double sup = 0.0;
  double integral = 0.0;
  double last = 0.0;

  void add(double dt, double y, bool first) {
    if (!first) integral += 0.5 * dt * (y + last);
    sup = std::max(sup, y);
    last = y;
  }
};

}  // namespace

bool admissible_alpha(int dim, double alpha) {
  if (dim == 2) return alpha > 0.0 && alpha <= 1.0 / 6.0;
  if (dim == 3) return alpha > 0.0 && alpha < 0.5;
  return false;
}

double default_alpha(int dim) { return dim == 2 ? 1.0 / 6.0 : 0.25; }

double theoretical_order(int dim, double alpha) { return 2.0 * alpha / (2.0 + dim + 2.0 * alpha); }

FunctionalSeries compute_functionals(const std::vector<MHDState>& traj_eps,
                                     const std::vector<MHDState>& traj_limit, double alpha, double p) {
  require_matching(traj_eps, traj_limit);
  const int d = traj_eps.front().grid().dim();
  if (!admissible_alpha(d, alpha)) throw std::invalid_argument("functionals: alpha outside the admissible range");
  if (!(p > 1.0)) throw std::invalid_argument("functionals: p must exceed 1");
  const double eps = traj_eps.front().eps;
  const double h = 0.5 * d;

  FunctionalSeries out;
  out.eps = eps;
  out.alpha = alpha;
  out.p = p;
  // Per β: sup/integral trackers for w, B^ε, v, B, 𝒫⊥u, b, and the L^p sums.
  struct Trackers {
    Running w_lo, w_hi, Be_lo, Be_hi, v_lo, v_hi, B_lo, B_hi, perp_lo, perp_hi, b_r1, b_rinf, yb, yperp;
  };
  std::array<Trackers, 2> tr{};
  for (std::size_t n = 0; n < traj_eps.size(); ++n) {
    const SampleShells s = shells_of(traj_eps[n], traj_limit[n]);
    const double t = traj_eps[n].t;
    const double dt = n == 0 ? 0.0 : t - traj_eps[n - 1].t;
    const bool first = n == 0;
    FunctionalSample fs;
    fs.t = t;
    for (int k = 0; k < 2; ++k) {
      const double beta = k == 0 ? 0.0 : alpha;
      const double lo = h - 1.0 + beta, hi = h + 1.0 + beta;
      const double sy = beta - 1.0 + 1.0 / p;
      Trackers& r = tr[k];
      r.w_lo.add(dt, besov_norm(s.w, lo), first);
      r.w_hi.add(dt, besov_norm(s.w, hi), first);
      r.Be_lo.add(dt, besov_norm(s.B_err, lo), first);
      r.Be_hi.add(dt, besov_norm(s.B_err, hi), first);
      r.v_lo.add(dt, besov_norm(s.v, lo), first);
      r.v_hi.add(dt, besov_norm(s.v, hi), first);
      r.B_lo.add(dt, besov_norm(s.B, lo), first);
      r.B_hi.add(dt, besov_norm(s.B, hi), first);
      r.perp_lo.add(dt, besov_norm(s.perp, lo), first);
      r.perp_hi.add(dt, besov_norm(s.perp, hi), first);
      r.b_r1.add(dt, hybrid_besov_norm(s.b, HybridBesovParams{h + beta, 1.0, eps}), first);
      r.b_rinf.add(dt, hybrid_besov_norm(s.b, HybridBesovParams{h + beta, HybridBesovParams::infinity(), eps}),
                   first);
      r.yb.add(dt, std::pow(besov_norm(s.b_inf, sy), p), first);
      r.yperp.add(dt, std::pow(besov_norm(s.perp_inf, sy), p), first);

      fs.sup_w[k] = r.w_lo.sup;
      fs.sup_B[k] = r.Be_lo.sup;
      fs.int_w[k] = r.w_hi.integral;
      fs.int_B[k] = r.Be_hi.integral;
      fs.W[k] = fs.sup_w[k] + fs.sup_B[k] + fs.int_w[k] + fs.int_B[k];
      fs.V[k] = r.v_lo.sup + r.v_hi.integral + r.B_lo.sup + r.B_hi.integral;
      fs.X[k] = r.b_r1.integral + r.b_rinf.sup + r.perp_hi.integral + r.perp_lo.sup;
      fs.Y[k] = std::pow(r.yb.integral, 1.0 / p) + std::pow(r.yperp.integral, 1.0 / p);
    }
    out.samples.push_back(fs);
  }
  return out;
}

std::string FunctionalSeries::to_ndjson() const {
  std::ostringstream os;
  for (const FunctionalSample& s : samples) {
    nlohmann::ordered_json j;
    j["eps"] = eps;
    j["t"] = s.t;
    j["W"] = s.W;
    j["X"] = s.X;
    j["Y"] = s.Y;
    j["V"] = s.V;
    j["sup_w"] = s.sup_w;
    j["sup_B"] = s.sup_B;
    j["int_w"] = s.int_w;
    j["int_B"] = s.int_B;
    os << j.dump() << '\n';
  }
  return os.str();
}

RateFit fit_rate(const std::vector<RatePoint>& points, double theoretical) {
  if (points.size() < 3) throw std::invalid_argument("rate fit needs at least 3 points");
  double lo = INFINITY, hi = 0.0;
  for (const RatePoint& pt : points) {
    if (!(pt.eps > 0.0)) throw std::invalid_argument("rate fit needs eps > 0");
    if (!(pt.error > 0.0)) throw std::invalid_argument("rate fit needs positive errors");
    lo = std::min(lo, pt.eps);
    hi = std::max(hi, pt.eps);
  }
  if (hi < 4.0 * lo * (1.0 - 1e-12)) throw std::invalid_argument("rate fit needs eps spanning a factor of 4");

  const Eigen::Index m = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd X(m, 2);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    X(i, 0) = 1.0;
    X(i, 1) = std::log(points[i].eps);
    y(i) = std::log(points[i].error);
  }
  // Centering the abscissa decouples the slope from a constant shift of y.
  const double xbar = X.col(1).mean();
  X.col(1).array() -= xbar;
  const Eigen::Vector2d c = X.colPivHouseholderQr().solve(y);
  RateFit fit;
  fit.points = points;
  fit.order = c(1);
  fit.intercept = c(0) - c(1) * xbar;
  fit.residual = std::sqrt((y - X * c).squaredNorm() / m);
  fit.theoretical_order = theoretical;
  return fit;
}

std::string RateFit::to_json() const {
  nlohmann::ordered_json j;
  j["order"] = order;
  j["intercept"] = intercept;
  j["residual"] = residual;
  if (std::isnan(theoretical_order)) {
    j["theoretical_order"] = nullptr;
  } else {
    j["theoretical_order"] = theoretical_order;
  }
  j["n_points"] = points.size();
  return j.dump();
}

double SweepEntry::sup_W0() const { return valid() ? functionals.final().sup_w[0] + functionals.final().sup_B[0] : NAN; }
double SweepEntry::sup_Walpha() const {
  return valid() ? functionals.final().sup_w[1] + functionals.final().sup_B[1] : NAN;
}
double SweepEntry::int_W0() const { return valid() ? functionals.final().int_w[0] + functionals.final().int_B[0] : NAN; }
double SweepEntry::Y_norm() const { return valid() ? functionals.final().Y[1] : NAN; }

std::vector<RatePoint> SweepResult::velocity_errors() const {
  std::vector<RatePoint> out;
  for (const SweepEntry& e : entries) {
    if (e.valid()) out.push_back({e.eps, e.functionals.final().sup_w[0]});
  }
  return out;
}

std::vector<RatePoint> SweepResult::magnetic_errors() const {
  std::vector<RatePoint> out;
  for (const SweepEntry& e : entries) {
    if (e.valid()) out.push_back({e.eps, e.functionals.final().sup_B[0]});
  }
  return out;
}

std::string SweepResult::to_csv() const {
  std::ostringstream os;
  os << "eps,sup_W0,sup_Walpha,int_W0,Y_norm,status\n";
  auto num = [](double x) { return std::isnan(x) ? std::string() : nlohmann::json(x).dump(); };
  for (const SweepEntry& e : entries) {
    os << num(e.eps) << ',' << num(e.sup_W0()) << ',' << num(e.sup_Walpha()) << ',' << num(e.int_W0()) << ','
       << num(e.Y_norm()) << ',' << to_string(e.status) << '\n';
  }
  return os.str();
}

std::string SweepResult::to_ndjson() const {
  std::ostringstream os;
  for (const SweepEntry& e : entries) {
    if (e.valid()) {
      os << e.functionals.to_ndjson();
    } else {
      nlohmann::ordered_json j;
      j["eps"] = e.eps;
      j["status"] = to_string(e.status);
      j["reason"] = e.reason;
      os << j.dump() << '\n';
    }
  }
  return os.str();
}

SweepResult run_sweep(const SweepConfig& cfg) {
  if (cfg.eps.size() < 3) throw std::invalid_argument("sweep needs at least 3 eps values");
  for (double e : cfg.eps) {
    if (!(e > 0.0)) throw std::invalid_argument("sweep needs eps > 0");
  }
  const double ratio = cfg.eps[1] / cfg.eps[0];
  for (std::size_t i = 1; i < cfg.eps.size(); ++i) {
    if (std::abs(cfg.eps[i] / cfg.eps[i - 1] - ratio) > 1e-9 * ratio || ratio == 1.0) {
      throw std::invalid_argument("sweep eps list must be geometric");
    }
  }
  const Grid& g = cfg.init.u0.grid();
  if (!admissible_alpha(g.dim(), cfg.alpha)) throw std::invalid_argument("sweep: alpha outside the admissible range");
  cfg.prm.validate();

  StepperConfig stepper = cfg.stepper;
  stepper.gradient_limit = std::numeric_limits<double>::infinity();

  const RunResult limit =
      run(MHDState::incompressible(leray_project(cfg.init.u0), cfg.init.H0), cfg.prm, stepper, cfg.horizon);
  if (limit.status != RunStatus::completed) throw NumericalAbort("limit run failed: " + limit.reason);

  SweepResult out;
  out.entries.resize(cfg.eps.size());
  out.theoretical_order = theoretical_order(g.dim(), cfg.alpha);
  parallel_for(cfg.eps.size(), cfg.threads, [&](std::size_t i) {
    SweepEntry& e = out.entries[i];
    e.eps = cfg.eps[i];
    const RunResult r =
        run(MHDState::scaled(cfg.init.b0, cfg.init.u0, cfg.init.H0, e.eps), cfg.prm, stepper, cfg.horizon);
    e.status = r.status;
    e.reason = r.reason;
    if (e.valid()) e.functionals = compute_functionals(r.trajectory, limit.trajectory, cfg.alpha, cfg.p);
  });
  // V only depends on the limit solution; pair it with its own lift.
  std::vector<MHDState> lifted;
  lifted.reserve(limit.trajectory.size());
  for (const MHDState& st : limit.trajectory) {
    lifted.push_back(MHDState::scaled(SpectralField(g, 1), st.u, st.H, cfg.eps.front(), st.t));
  }
  out.V = compute_functionals(lifted, limit.trajectory, cfg.alpha, cfg.p).final().V;
  return out;
}

}  // namespace mhdlab
