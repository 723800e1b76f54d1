#include "mhdlab/config.hpp"

#include "mhdlab/initial_data.hpp"
#include "mhdlab/operators.hpp"
#include "mhdlab/profiles.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace mhdlab {

namespace {

using nlohmann::json;

constexpr const char* kExperiments[] = {"run", "sweep", "audit", "decay", "norms"};
constexpr const char* kProfiles[] = {"taylor_green", "symmetric_uB", "random_band", "acoustic_pulse",
                                     "ill_prepared"};

[[noreturn]] void fail(const std::string& key, const std::string& what) { throw ConfigError(key + ": " + what); }

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) fail(key, what);
}

// View of one JSON object that remembers which keys were read, so leftovers
// can be reported as unknown.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_.empty() ? "config" : path_, "must be an object");
  }

  ~Section() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) fail(key(k), "unknown key");
    }
  }

  std::string key(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }

  const json* find(const std::string& k) {
    seen_.insert(k);
    const auto it = j_.find(k);
    return it == j_.end() ? nullptr : &*it;
  }

  Section sub(const std::string& k) {
    static const json empty = json::object();
    const json* v = find(k);
    return Section(v ? *v : empty, key(k));
  }

  void number(const std::string& k, double& out) {
    if (const json* v = find(k)) {
      require(v->is_number(), key(k), "must be a number");
      out = v->get<double>();
      require(std::isfinite(out), key(k), "must be finite");
    }
  }

  void integer(const std::string& k, int& out) {
    if (const json* v = find(k)) {
      require(v->is_number_integer(), key(k), "must be an integer");
      out = v->get<int>();
    }
  }

  void unsigned_integer(const std::string& k, std::uint64_t& out) {
    if (const json* v = find(k)) {
      require(v->is_number_unsigned(), key(k), "must be a nonnegative integer");
      out = v->get<std::uint64_t>();
    }
  }

  void boolean(const std::string& k, bool& out) {
    if (const json* v = find(k)) {
      require(v->is_boolean(), key(k), "must be true or false");
      out = v->get<bool>();
    }
  }

  void string(const std::string& k, std::string& out) {
    if (const json* v = find(k)) {
      require(v->is_string(), key(k), "must be a string");
      out = v->get<std::string>();
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

template <std::size_t M>
bool one_of(const std::string& s, const char* const (&names)[M]) {
  for (const char* n : names) {
    if (s == n) return true;
  }
  return false;
}

std::string lebesgue_name(Lebesgue p) { return p == Lebesgue::two ? "2" : "inf"; }

void read_stepper(Section sec, StepperConfig& st) {
  std::string scheme = to_string(st.scheme);
  sec.string("scheme", scheme);
  try {
    st.scheme = parse_scheme(scheme);
  } catch (const std::invalid_argument&) {
    fail(sec.key("scheme"), "must be strang_rk4 or etd_rk2");
  }
  sec.number("dt", st.dt);
  require(st.dt > 0.0, sec.key("dt"), "must be > 0");
  sec.integer("truncation", st.truncation);
  require(st.truncation >= 0, sec.key("truncation"), "must be >= 0");
  sec.boolean("dealias", st.dealias);
  sec.number("vacuum_floor", st.vacuum_floor);
  require(st.vacuum_floor > 0.0 && st.vacuum_floor < 1.0, sec.key("vacuum_floor"), "must lie in (0, 1)");
  sec.integer("save_stride", st.save_stride);
  require(st.save_stride >= 1, sec.key("save_stride"), "must be >= 1");
  if (const json* v = sec.find("gradient_limit")) {
    if (v->is_null()) {
      st.gradient_limit = std::numeric_limits<double>::infinity();
    } else {
      require(v->is_number() && v->get<double>() > 0.0, sec.key("gradient_limit"), "must be > 0 or null");
      st.gradient_limit = v->get<double>();
    }
  }
  if (const json* v = sec.find("norms")) {
    require(v->is_array(), sec.key("norms"), "must be an array");
    st.norms.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      Section n((*v)[i], sec.key("norms") + "[" + std::to_string(i) + "]");
      NormRequest r;
      n.string("field", r.field);
      require(r.field == "density" || r.field == "u" || r.field == "H", n.key("field"), "must be density, u or H");
      n.number("s", r.s);
      std::string p = "2";
      if (const json* pv = n.find("p")) {
        require(pv->is_string() || pv->is_number_integer(), n.key("p"), "must be \"2\" or \"inf\"");
        p = pv->is_string() ? pv->get<std::string>() : std::to_string(pv->get<int>());
      }
      require(p == "2" || p == "inf", n.key("p"), "must be \"2\" or \"inf\"");
      r.p = p == "2" ? Lebesgue::two : Lebesgue::inf;
      st.norms.push_back(r);
    }
  }
}

void validate_physics(const PhysicalParams& prm) {
  require(prm.mu > 0.0, "physics.mu", "viscosity requires mu > 0");
  require(2.0 * prm.mu + prm.lambda > 0.0, "physics.lambda", "viscosity requires 2mu + lambda > 0");
  require(prm.nu > 0.0, "physics.nu", "magnetic diffusivity requires nu > 0");
  require(prm.pressure_coefficient > 0.0, "physics.A", "pressure law requires A > 0");
  require(prm.gamma > 1.0, "physics.gamma", "pressure law requires gamma > 1");
}

RunConfig from_json(const json& root) {
  RunConfig cfg;
  Section top(root, "");

  const json* exp = top.find("experiment");
  require(exp != nullptr, "experiment", "missing");
  require(exp->is_string() && one_of(exp->get<std::string>(), kExperiments), "experiment",
          "must be one of run, sweep, audit, decay, norms");
  cfg.experiment = parse_experiment(exp->get<std::string>());

  {
    Section g = top.sub("grid");
    g.integer("d", cfg.grid.d);
    require(cfg.grid.d == 2 || cfg.grid.d == 3, "grid.d", "must be 2 or 3");
    g.integer("N", cfg.grid.N);
    require(cfg.grid.N >= 8 && (cfg.grid.N & (cfg.grid.N - 1)) == 0, "grid.N", "must be a power of two >= 8");
    g.number("L", cfg.grid.L);
    require(cfg.grid.L > 0.0, "grid.L", "must be > 0");
  }
  {
    Section p = top.sub("physics");
    p.number("mu", cfg.physics.mu);
    p.number("lambda", cfg.physics.lambda);
    p.number("nu", cfg.physics.nu);
    p.number("A", cfg.physics.pressure_coefficient);
    p.number("gamma", cfg.physics.gamma);
    validate_physics(cfg.physics);
  }

  std::string regime = to_string(cfg.regime);
  top.string("regime", regime);
  try {
    cfg.regime = parse_regime(regime);
  } catch (const std::invalid_argument&) {
    fail("regime", "must be compressible, scaled or incompressible");
  }
  top.number("eps", cfg.eps);
  require(cfg.eps > 0.0, "eps", "must be > 0");
  top.unsigned_integer("seed", cfg.seed);

  {
    InitialDataConfig& id = cfg.initial_data;
    id.seed = cfg.seed;
    Section s = top.sub("initial_data");
    s.string("profile", id.profile);
    require(one_of(id.profile, kProfiles), "initial_data.profile",
            "must be one of taylor_green, symmetric_uB, random_band, acoustic_pulse, ill_prepared");
    s.number("amplitude", id.amplitude);
    s.unsigned_integer("seed", id.seed);
    s.number("kmin", id.kmin);
    s.number("kmax", id.kmax);
    require(id.kmin >= 0.0, "initial_data.kmin", "must be >= 0");
    require(id.kmax > id.kmin, "initial_data.kmax", "must exceed kmin");
    s.boolean("solenoidal", id.solenoidal);
    s.number("width", id.width);
    require(id.width > 0.0, "initial_data.width", "must be > 0");
    s.number("width_fraction", id.width_fraction);
    require(id.width_fraction > 0.0 && id.width_fraction < 0.25, "initial_data.width_fraction",
            "must lie in (0, 1/4)");
    s.number("magnetic_amplitude", id.magnetic_amplitude);
    if (id.profile == "taylor_green") require(cfg.grid.d == 2, "initial_data.profile", "taylor_green needs d = 2");
    if (cfg.regime == Regime::incompressible) {
      require(id.profile != "acoustic_pulse" && id.profile != "ill_prepared", "initial_data.profile",
              "incompressible regime needs solenoidal data");
      require(id.profile != "random_band" || id.solenoidal, "initial_data.solenoidal",
              "incompressible regime needs solenoidal data");
    }
  }

  read_stepper(top.sub("stepper"), cfg.stepper);
  top.integer("snapshot_stride", cfg.snapshot_stride);
  require(cfg.snapshot_stride >= 0, "snapshot_stride", "must be >= 0");
  top.number("horizon", cfg.horizon);
  require(cfg.horizon >= 0.0, "horizon", "must be >= 0");
  cfg.alpha = default_alpha(cfg.grid.d);
  top.number("alpha", cfg.alpha);
  require(admissible_alpha(cfg.grid.d, cfg.alpha), "alpha",
          cfg.grid.d == 2 ? "must lie in (0, 1/6] for d = 2" : "must lie in (0, 1/2) for d = 3");

  {
    Section s = top.sub("sweep");
    if (const json* v = s.find("eps")) {
      require(v->is_array() && v->size() >= 3, "sweep.eps", "must be an array of at least 3 numbers");
      cfg.sweep.eps.clear();
      for (const json& e : *v) {
        require(e.is_number() && e.get<double>() > 0.0, "sweep.eps", "entries must be > 0");
        cfg.sweep.eps.push_back(e.get<double>());
      }
    }
    const auto& e = cfg.sweep.eps;
    for (std::size_t i = 1; i < e.size(); ++i) {
      require(std::abs(e[i] / e[i - 1] - e[1] / e[0]) <= 1e-9 * (e[1] / e[0]) && e[1] != e[0], "sweep.eps",
              "must be geometric");
    }
    s.number("p", cfg.sweep.p);
    require(cfg.sweep.p > 1.0, "sweep.p", "must be > 1");
  }
  {
    AuditSection& a = cfg.audit;
    Section s = top.sub("audit");
    s.string("estimate", a.estimate);
    try {
      parse_audit_kind(a.estimate);
    } catch (const std::invalid_argument&) {
      fail("audit.estimate", "must be transport_2.1, momentum_2.2, induction_2.3, imhd_B2 or imhd_B3");
    }
    s.integer("samples", a.samples);
    require(a.samples >= 1, "audit.samples", "must be >= 1");
    s.number("horizon", a.horizon);
    require(a.horizon > 0.0, "audit.horizon", "must be > 0");
    s.integer("steps", a.steps);
    require(a.steps >= 1, "audit.steps", "must be >= 1");
    s.number("s", a.s);
    s.number("alpha", a.alpha);
    s.number("kappa", a.kappa);
    s.number("gronwall_constant", a.gronwall_constant);
    s.number("band", a.band);
    require(a.band > 1.0, "audit.band", "must be > 1");
    s.number("data_amplitude", a.data_amplitude);
    s.number("coefficient_amplitude", a.coefficient_amplitude);
    s.number("forcing_amplitude", a.forcing_amplitude);
    s.string("mollifier", a.mollifier);
    require(a.mollifier == "sharp" || a.mollifier == "smooth", "audit.mollifier", "must be sharp or smooth");
    s.boolean("rescale", a.rescale);
  }
  {
    DecaySection& d = cfg.decay;
    Section s = top.sub("decay");
    s.number("width", d.width);
    require(d.width > 0.0, "decay.width", "must be > 0");
    s.number("speed", d.speed);
    require(d.speed > 0.0, "decay.speed", "must be > 0");
    s.number("amplitude", d.amplitude);
    s.number("horizon", d.horizon);
    require(d.horizon >= 0.0, "decay.horizon", "must be >= 0");
    s.number("start_radius", d.start_radius);
    require(d.start_radius > 0.0, "decay.start_radius", "must be > 0");
    s.number("margin", d.margin);
    require(d.margin > 0.0, "decay.margin", "must be > 0");
    s.integer("samples", d.samples);
    require(d.samples >= 3, "decay.samples", "must be >= 3");
  }

  top.string("output", cfg.output);
  require(!cfg.output.empty(), "output", "must not be empty");
  return cfg;
}

json to_json(const RunConfig& c) {
  json j;
  j["experiment"] = to_string(c.experiment);
  j["grid"] = {{"d", c.grid.d}, {"N", c.grid.N}, {"L", c.grid.L}};
  j["physics"] = {{"mu", c.physics.mu},
                  {"lambda", c.physics.lambda},
                  {"nu", c.physics.nu},
                  {"A", c.physics.pressure_coefficient},
                  {"gamma", c.physics.gamma}};
  j["regime"] = to_string(c.regime);
  j["eps"] = c.eps;
  const InitialDataConfig& id = c.initial_data;
  j["initial_data"] = {{"profile", id.profile},
                       {"amplitude", id.amplitude},
                       {"seed", id.seed},
                       {"kmin", id.kmin},
                       {"kmax", id.kmax},
                       {"solenoidal", id.solenoidal},
                       {"width", id.width},
                       {"width_fraction", id.width_fraction},
                       {"magnetic_amplitude", id.magnetic_amplitude}};
  const StepperConfig& st = c.stepper;
  json norms = json::array();
  for (const NormRequest& r : st.norms) norms.push_back({{"field", r.field}, {"s", r.s}, {"p", lebesgue_name(r.p)}});
  j["stepper"] = {{"scheme", to_string(st.scheme)},
                  {"dt", st.dt},
                  {"truncation", st.truncation},
                  {"dealias", st.dealias},
                  {"vacuum_floor", st.vacuum_floor},
                  {"save_stride", st.save_stride},
                  {"gradient_limit", std::isinf(st.gradient_limit) ? json(nullptr) : json(st.gradient_limit)},
                  {"norms", norms}};
  j["snapshot_stride"] = c.snapshot_stride;
  j["horizon"] = c.horizon;
  j["alpha"] = c.alpha;
  j["sweep"] = {{"eps", c.sweep.eps}, {"p", c.sweep.p}};
  const AuditSection& a = c.audit;
  j["audit"] = {{"estimate", a.estimate},
                {"samples", a.samples},
                {"horizon", a.horizon},
                {"steps", a.steps},
                {"s", a.s},
                {"alpha", a.alpha},
                {"kappa", a.kappa},
                {"gronwall_constant", a.gronwall_constant},
                {"band", a.band},
                {"data_amplitude", a.data_amplitude},
                {"coefficient_amplitude", a.coefficient_amplitude},
                {"forcing_amplitude", a.forcing_amplitude},
                {"mollifier", a.mollifier},
                {"rescale", a.rescale}};
  const DecaySection& d = c.decay;
  j["decay"] = {{"width", d.width},
                {"speed", d.speed},
                {"amplitude", d.amplitude},
                {"horizon", d.horizon},
                {"start_radius", d.start_radius},
                {"margin", d.margin},
                {"samples", d.samples}};
  j["output"] = c.output;
  j["seed"] = c.seed;
  return j;
}

}  // namespace

std::string to_string(Experiment e) { return kExperiments[static_cast<int>(e)]; }

Experiment parse_experiment(const std::string& name) {
  for (int i = 0; i < 5; ++i) {
    if (name == kExperiments[i]) return static_cast<Experiment>(i);
  }
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  return from_json(j);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot read " + path.string());
  std::ostringstream os;
  os << is.rdbuf();
  return parse_config(os.str());
}

std::string canonical_config(const RunConfig& cfg) { return to_json(cfg).dump(); }

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : canonical_config(cfg)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

MHDState make_initial_state(const RunConfig& cfg) {
  const Grid g = cfg.make_grid();
  const InitialDataConfig& id = cfg.initial_data;
  const int d = g.dim();
  SpectralField density(g, 1), u(g, d), H(g, d);
  if (id.profile == "taylor_green") {
    u = taylor_green(g, id.amplitude);
  } else if (id.profile == "symmetric_uB") {
    const MHDState s = symmetric_uB(g, id.seed, id.kmin * g.dk(), id.kmax * g.dk(), id.amplitude);
    u = s.u;
    H = s.H;
  } else if (id.profile == "random_band") {
    std::mt19937_64 r0 = stream_rng(id.seed, 0), r1 = stream_rng(id.seed, 1), r2 = stream_rng(id.seed, 2);
    const double lo = id.kmin * g.dk(), hi = id.kmax * g.dk();
    u = random_band(g, d, r1, lo, hi, id.amplitude, id.solenoidal);
    H = random_band(g, d, r2, lo, hi, id.amplitude, true);
    if (cfg.regime != Regime::incompressible) density = random_band(g, 1, r0, lo, hi, id.amplitude);
  } else if (id.profile == "acoustic_pulse") {
    density = gaussian_pulse(g, id.width, id.amplitude);
  } else {
    LowMachData data = ill_prepared_data(g, id.width_fraction, id.magnetic_amplitude);
    density = data.b0;
    u = data.u0;
    H = data.H0;
  }
  switch (cfg.regime) {
    case Regime::compressible: return MHDState::compressible(density, u, H);
    case Regime::scaled: return MHDState::scaled(density, u, H, cfg.eps);
    case Regime::incompressible: return MHDState::incompressible(u, H);
  }
  throw std::logic_error("unreachable");
}

SweepConfig make_sweep_config(const RunConfig& cfg) {
  const Grid g = cfg.make_grid();
  SweepConfig s(ill_prepared_data(g, cfg.initial_data.width_fraction, cfg.initial_data.magnetic_amplitude));
  s.eps = cfg.sweep.eps;
  s.prm = cfg.physics;
  s.stepper = cfg.stepper;
  s.horizon = cfg.horizon;
  s.alpha = cfg.alpha;
  s.p = cfg.sweep.p;
  return s;
}

AuditConfig make_audit_config(const RunConfig& cfg) {
  AuditConfig a;
  a.dim = cfg.grid.d;
  a.n = cfg.grid.N;
  a.length = cfg.grid.L;
  a.horizon = cfg.audit.horizon;
  a.steps = cfg.audit.steps;
  a.mu = cfg.physics.mu;
  a.lambda = cfg.physics.lambda;
  a.nu = cfg.physics.nu;
  a.s = cfg.audit.s;
  a.alpha = cfg.audit.alpha;
  a.kappa = cfg.audit.kappa;
  a.gronwall_constant = cfg.audit.gronwall_constant;
  a.band = cfg.audit.band;
  a.data_amplitude = cfg.audit.data_amplitude;
  a.coefficient_amplitude = cfg.audit.coefficient_amplitude;
  a.forcing_amplitude = cfg.audit.forcing_amplitude;
  a.mollifier = cfg.audit.mollifier == "smooth" ? Mollifier::smooth : Mollifier::sharp;
  a.rescale = cfg.audit.rescale;
  return a;
}

DecayConfig make_decay_config(const RunConfig& cfg) {
  DecayConfig d;
  d.dim = cfg.grid.d;
  d.n = cfg.grid.N;
  d.length = cfg.grid.L;
  d.eps = cfg.eps;
  d.width = cfg.decay.width;
  d.speed = cfg.decay.speed;
  d.amplitude = cfg.decay.amplitude;
  d.horizon = cfg.decay.horizon;
  d.start_radius = cfg.decay.start_radius;
  d.margin = cfg.decay.margin;
  d.samples = cfg.decay.samples;
  return d;
}

}  // namespace mhdlab
