#include "mhdlab/audit.hpp"

#include "mhdlab/besov.hpp"
#include "mhdlab/operators.hpp"
#include "mhdlab/parallel.hpp"
#include "mhdlab/profiles.hpp"
#include "mhdlab/time_norms.hpp"

#include <json.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mhdlab {

namespace {

using Fields = std::vector<SpectralField>;

struct KindInfo {
  AuditKind kind;
  const char* name;
};

constexpr KindInfo kKinds[] = {
    {AuditKind::transport, "transport_2.1"}, {AuditKind::momentum, "momentum_2.2"},
    {AuditKind::induction, "induction_2.3"}, {AuditKind::imhd_b2, "imhd_B2"},
    {AuditKind::imhd_b3, "imhd_B3"},
};

bool velocity_like(const std::string& name) {
  return name == "v" || name == "w" || name == "u" || name == "A" || name == "E";
}

bool forcing_like(const std::string& name) { return name == "f" || name == "g"; }

bool finite(const SpectralField& f) { return f.coeffs().allFinite(); }

Fields axpy(const Fields& y, double h, const Fields& k) {
  Fields out = y;
  for (std::size_t i = 0; i < y.size(); ++i) out[i] += h * k[i];
  return out;
}

// Strang splitting: exact linear half-flows around one RK4 step of the rest.
struct SplitProblem {
  std::function<Fields(const Fields&, double)> linear;
  std::function<Fields(const Fields&)> rhs;
  std::function<void(Fields&)> project = [](Fields&) {};
};

Fields strang_step(const SplitProblem& p, const Fields& y0, double h) {
  Fields y = p.linear(y0, 0.5 * h);
  const Fields k1 = p.rhs(y);
  const Fields k2 = p.rhs(axpy(y, 0.5 * h, k1));
  const Fields k3 = p.rhs(axpy(y, 0.5 * h, k2));
  const Fields k4 = p.rhs(axpy(y, h, k3));
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  y = p.linear(y, 0.5 * h);
  p.project(y);
  return y;
}

struct Integration {
  std::vector<TimeNormAccumulator> norms;
  bool finite = true;
  double blowup_time = 0.0;
};

Integration integrate(const SplitProblem& p, Fields y, double horizon, int steps, Mollifier m) {
  Integration out;
  out.norms.assign(y.size(), TimeNormAccumulator(m));
  for (std::size_t i = 0; i < y.size(); ++i) out.norms[i].record(0.0, y[i]);
  const double h = horizon / steps;
  for (int n = 1; n <= steps; ++n) {
    y = strang_step(p, y, h);
    for (const auto& f : y) {
      if (!finite(f)) {
        out.finite = false;
        out.blowup_time = n * h;
        return out;
      }
    }
    for (std::size_t i = 0; i < y.size(); ++i) out.norms[i].record(n * h, y[i]);
  }
  return out;
}

double besov2(const SpectralField& f, double s, Mollifier m) {
  return besov_norm(f, {s, Lebesgue::two}, m);
}

AuditOutcome finish(double lhs, double rhs, const Integration& run) {
  AuditOutcome out;
  if (!run.finite) {
    out.valid = false;
    std::ostringstream msg;
    msg << "numerical blow-up at t = " << run.blowup_time;
    out.note = msg.str();
    return out;
  }
  out.lhs = lhs;
  out.rhs = rhs;
  if (lhs == 0.0) {
    out.ratio = 0.0;
  } else if (!std::isfinite(rhs) || !std::isfinite(lhs) || rhs <= 0.0) {
    out.valid = false;
    out.note = "non-finite bound";
  } else {
    out.ratio = lhs / rhs;
  }
  return out;
}

Fields no_flow(const Fields& y, double) { return y; }

AuditOutcome audit_transport(const AuditSample& s, const AuditConfig& cfg) {
  const SpectralField& v = s.at("v");
  const SpectralField& f = s.at("f");
  SplitProblem p{no_flow, [&](const Fields& y) { return Fields{f - advection(v, y[0])}; }};
  const Integration run = integrate(p, {s.at("a0")}, s.horizon, s.steps, cfg.mollifier);
  const int d = s.grid.dim();
  const double T = s.horizon;
  const double C = cfg.gronwall_constant;
  const double vprime = gradient_besov_norm(v, 0.5 * d, cfg.mollifier);
  const double cv = C * vprime;
  // ∫_0^T e^{-CV(τ)}‖f‖ dτ with V(τ) = τ V'.
  const double weight = cv > 0.0 ? -std::expm1(-cv * T) / cv : T;
  const double rhs =
      (besov2(s.at("a0"), cfg.s, cfg.mollifier) + weight * besov2(f, cfg.s, cfg.mollifier)) *
      std::exp(cv * T);
  const double lhs = run.finite ? run.norms[0].chemin_lerner_sup(cfg.s) : 0.0;
  return finish(lhs, rhs, run);
}

AuditOutcome audit_momentum(const AuditSample& s, const AuditConfig& cfg) {
  const SpectralField& v = s.at("v");
  const SpectralField& w = s.at("w");
  const SpectralField& c = s.at("c");
  const SpectralField& g = s.at("g");
  const double mu = cfg.mu, lambda = cfg.lambda;
  SplitProblem p{
      [&](const Fields& y, double h) { return Fields{viscous_flow(y[0], mu, lambda, h)}; },
      [&](const Fields& y) {
        const SpectralField& u = y[0];
        return Fields{g - advection(v, u) - advection(u, w) +
                      product(c, viscosity_operator(u, mu, lambda))};
      }};
  const Integration run = integrate(p, {s.at("u0")}, s.horizon, s.steps, cfg.mollifier);
  const int d = s.grid.dim();
  const double T = s.horizon;
  const double bstar = 1.0 + to_physical(c).values.minCoeff();
  const double nubar = 2.0 * mu + lambda;
  const double a = cfg.alpha;
  const double coef = bstar * mu * std::pow(nubar / (bstar * mu), 2.0 / a) *
                      std::pow(besov2(c, 0.5 * d + a, cfg.mollifier), 2.0 / a);
  const double rate = besov2(v, 0.5 * d + 1, cfg.mollifier) +
                      besov2(w, 0.5 * d + 1, cfg.mollifier) + coef;
  const double rhs =
      (besov2(s.at("u0"), cfg.s, cfg.mollifier) + T * besov2(g, cfg.s, cfg.mollifier)) *
      std::exp(cfg.gronwall_constant * rate * T);
  double lhs = 0.0;
  if (run.finite) {
    lhs = run.norms[0].chemin_lerner_sup(cfg.s) +
          cfg.kappa * bstar * mu * run.norms[0].integral(cfg.s + 2);
  }
  return finish(lhs, rhs, run);
}

AuditOutcome audit_induction(const AuditSample& s, const AuditConfig& cfg) {
  const SpectralField& u = s.at("u");
  const SpectralField& g = s.at("g");
  const SpectralField divu = div(u);
  const double nu = cfg.nu;
  SplitProblem p{
      [&](const Fields& y, double h) { return Fields{heat_flow(y[0], nu, h)}; },
      [&](const Fields& y) {
        const SpectralField& H = y[0];
        return Fields{g - advection(u, H) + advection(H, u) - product(divu, H)};
      },
      [](Fields& y) { y[0] = leray_project(y[0]); }};
  const Integration run = integrate(p, {s.at("H0")}, s.horizon, s.steps, cfg.mollifier);
  const int d = s.grid.dim();
  const double T = s.horizon;
  const double rate = gradient_besov_norm(u, 0.5 * d, cfg.mollifier);
  const double rhs =
      (besov2(s.at("H0"), cfg.s, cfg.mollifier) + T * besov2(g, cfg.s, cfg.mollifier)) *
      std::exp(cfg.gronwall_constant * rate * T);
  double lhs = 0.0;
  if (run.finite) {
    lhs = run.norms[0].chemin_lerner_sup(cfg.s) + cfg.kappa * nu * run.norms[0].integral(cfg.s + 2);
  }
  return finish(lhs, rhs, run);
}

AuditOutcome audit_imhd(const AuditSample& s, const AuditConfig& cfg, bool projected) {
  const SpectralField& A = s.at("A");
  const SpectralField& E = s.at("E");
  const SpectralField& f = s.at("f");
  const SpectralField& g = s.at("g");
  const double mu = cfg.mu, nu = cfg.nu;
  auto P = [projected](SpectralField x) { return projected ? leray_project(x) : x; };
  SplitProblem p{
      [&](const Fields& y, double h) {
        return Fields{heat_flow(y[0], mu, h), heat_flow(y[1], nu, h)};
      },
      [&](const Fields& y) {
        const SpectralField& w = y[0];
        const SpectralField& B = y[1];
        SpectralField dw = f - advection(A, w) - advection(w, A) + advection(B, E) + advection(E, B);
        SpectralField dB = g - advection(A, B) + advection(B, A) - advection(w, E) + advection(E, w);
        return Fields{P(std::move(dw)), P(std::move(dB))};
      }};
  const Integration run = integrate(p, {s.at("w0"), s.at("B0")}, s.horizon, s.steps, cfg.mollifier);
  const int d = s.grid.dim();
  const double T = s.horizon;
  const double rate = gradient_besov_norm(A, 0.5 * d, cfg.mollifier) +
                      gradient_besov_norm(E, 0.5 * d, cfg.mollifier);
  const double data = besov2(s.at("w0"), cfg.s, cfg.mollifier) +
                      besov2(s.at("B0"), cfg.s, cfg.mollifier);
  const double forcing = besov2(f, cfg.s, cfg.mollifier) + besov2(g, cfg.s, cfg.mollifier);
  const double rhs = (data + T * forcing) * std::exp(cfg.gronwall_constant * rate * T);
  double lhs = 0.0;
  if (run.finite) {
    const double nu_low = std::min(mu, nu);
    for (const auto& acc : run.norms) {
      lhs += acc.chemin_lerner_sup(cfg.s) + cfg.kappa * nu_low * acc.integral(cfg.s + 2);
    }
  }
  return finish(lhs, rhs, run);
}

}  // namespace

std::string to_string(AuditKind k) {
  for (const auto& info : kKinds) {
    if (info.kind == k) return info.name;
  }
  throw std::invalid_argument("unknown audit kind");
}

AuditKind parse_audit_kind(const std::string& name) {
  for (const auto& info : kKinds) {
    if (name == info.name) return info.kind;
  }
  throw std::invalid_argument("unknown audit estimate '" + name + "'");
}

const SpectralField& AuditSample::at(const std::string& name) const {
  auto it = fields.find(name);
  if (it == fields.end()) throw std::invalid_argument("audit sample lacks field '" + name + "'");
  return it->second;
}

AuditSample make_audit_sample(AuditKind kind, std::uint64_t seed, std::uint64_t index,
                              const AuditConfig& cfg) {
  const Grid g(cfg.dim, cfg.n, cfg.length);
  std::mt19937_64 rng = stream_rng(seed, index);
  const double kmin = g.dk(), kmax = cfg.band * g.dk();
  const int d = g.dim();
  auto field = [&](int comps, double amp, bool sol = false) {
    return random_band(g, comps, rng, kmin, kmax, amp, sol);
  };
  AuditSample s{kind, g, cfg.horizon, cfg.steps, {}};
  const double da = cfg.data_amplitude, ca = cfg.coefficient_amplitude, fa = cfg.forcing_amplitude;
  switch (kind) {
    case AuditKind::transport:
      s.fields.emplace("a0", field(1, da));
      s.fields.emplace("v", field(d, ca));
      s.fields.emplace("f", field(1, fa));
      break;
    case AuditKind::momentum: {
      s.fields.emplace("u0", field(d, da));
      s.fields.emplace("v", field(d, ca));
      s.fields.emplace("w", field(d, ca));
      // Keep b = 1 + c >= 1/2.
      SpectralField c = field(1, 1.0);
      const double peak = to_physical(c).values.abs().maxCoeff();
      if (peak > 0.0) c *= 0.5 * std::min(ca, 1.0) / peak;
      s.fields.emplace("c", std::move(c));
      s.fields.emplace("g", field(d, fa));
      break;
    }
    case AuditKind::induction:
      s.fields.emplace("H0", field(d, da, true));
      s.fields.emplace("u", field(d, ca));
      s.fields.emplace("g", field(d, fa, true));
      break;
    case AuditKind::imhd_b2:
    case AuditKind::imhd_b3: {
      const bool sol = kind == AuditKind::imhd_b3;
      s.fields.emplace("w0", field(d, da, sol));
      s.fields.emplace("B0", field(d, da, sol));
      s.fields.emplace("A", field(d, ca));
      s.fields.emplace("E", field(d, ca));
      s.fields.emplace("f", field(d, fa, sol));
      s.fields.emplace("g", field(d, fa, sol));
      break;
    }
  }
  return s;
}

AuditSample rescale_sample(const AuditSample& sample) {
  const Grid g(sample.grid.dim(), sample.grid.n(), 0.5 * sample.grid.length());
  AuditSample out{sample.kind, g, 0.25 * sample.horizon, sample.steps, {}};
  for (const auto& [name, f] : sample.fields) {
    double scale = 1.0;
    if (velocity_like(name)) scale = 2.0;
    if (forcing_like(name)) scale = 4.0;
    out.fields.emplace(name, SpectralField(g, scale * f.coeffs()));
  }
  return out;
}

AuditOutcome evaluate_audit(const AuditSample& sample, const AuditConfig& cfg) {
  switch (sample.kind) {
    case AuditKind::transport:
      return audit_transport(sample, cfg);
    case AuditKind::momentum:
      return audit_momentum(sample, cfg);
    case AuditKind::induction:
      return audit_induction(sample, cfg);
    case AuditKind::imhd_b2:
      return audit_imhd(sample, cfg, false);
    case AuditKind::imhd_b3:
      return audit_imhd(sample, cfg, true);
  }
  throw std::invalid_argument("unknown audit kind");
}

int AuditReport::excluded() const {
  int n = 0;
  for (const auto& r : records) n += r.base.valid ? 0 : 1;
  return n;
}

std::vector<double> AuditReport::ratios() const {
  std::vector<double> out;
  for (const auto& r : records) {
    if (r.base.valid) out.push_back(r.base.ratio);
  }
  return out;
}

double AuditReport::max_ratio() const {
  double m = 0.0;
  for (double r : ratios()) m = std::max(m, r);
  return m;
}

double AuditReport::rescale_spread() const {
  double spread = 0.0;
  for (const auto& r : records) {
    if (!r.base.valid || !r.rescaled || !r.rescaled->valid || r.base.ratio == 0.0) continue;
    spread = std::max(spread, std::abs(r.rescaled->ratio / r.base.ratio - 1.0));
  }
  return spread;
}

std::string AuditReport::to_ndjson() const {
  std::string out;
  for (const auto& r : records) {
    nlohmann::ordered_json line;
    line["estimate"] = estimate;
    line["seed"] = seed;
    line["sample"] = r.sample;
    line["ratio"] = r.base.valid ? nlohmann::ordered_json(r.base.ratio) : nlohmann::ordered_json();
    if (r.rescaled && r.rescaled->valid) line["rescaled_ratio"] = r.rescaled->ratio;
    line["valid"] = r.base.valid;
    if (!r.base.note.empty()) line["note"] = r.base.note;
    line["horizon"] = horizon;
    line["resolution"] = resolution;
    out += line.dump();
    out += '\n';
  }
  return out;
}

AuditReport audit_estimate(AuditKind kind, int samples, std::uint64_t seed, const AuditConfig& cfg) {
  if (samples < 1) throw std::invalid_argument("audit requires samples >= 1");
  AuditReport report;
  report.estimate = to_string(kind);
  report.seed = seed;
  report.horizon = cfg.horizon;
  report.resolution = cfg.n;
  report.records.resize(static_cast<std::size_t>(samples));
  parallel_for(report.records.size(), cfg.threads, [&](std::size_t i) {
    AuditRecord rec;
    rec.sample = i;
    const AuditSample s = make_audit_sample(kind, seed, i, cfg);
    rec.base = evaluate_audit(s, cfg);
    if (cfg.rescale) rec.rescaled = evaluate_audit(rescale_sample(s), cfg);
    report.records[i] = std::move(rec);
  });
  return report;
}

}  // namespace mhdlab
