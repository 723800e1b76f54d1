#include "mhdlab/experiments.hpp"

#include "mhdlab/snapshot.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mhdlab {

namespace {

using ojson = nlohmann::ordered_json;

std::filesystem::path write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os || !(os << text) || !os.flush()) throw std::runtime_error("cannot write " + path.string());
  return path;
}

std::string step_tag(long step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%08ld", step);
  return buf;
}

ojson base_summary(const RunConfig& cfg, const std::string& hash) {
  ojson s;
  s["experiment"] = to_string(cfg.experiment);
  s["config_hash"] = hash;
  return s;
}

ExperimentOutcome do_run(const RunConfig& cfg, const std::filesystem::path& dir, const std::string& hash) {
  ExperimentOutcome out;
  const MHDState init = make_initial_state(cfg);
  const RunResult r = run(init, cfg.physics, cfg.stepper, cfg.horizon);

  if (!r.series.empty()) {
    const Report rep = diagnostics_report(r.series, hash);
    out.files.push_back(emit_report(rep, ReportFormat::ndjson, dir));
    out.files.push_back(emit_report(rep, ReportFormat::csv, dir));
    out.files.push_back(emit_report(rep, ReportFormat::plotdata, dir));
  }
  if (cfg.snapshot_stride > 0) {
    const long steps = cfg.horizon == 0.0
                           ? 0
                           : std::max(1L, static_cast<long>(std::ceil(cfg.horizon / cfg.stepper.dt - 1e-9)));
    const std::filesystem::path snap = dir / ("snapshots-" + hash);
    std::filesystem::create_directories(snap);
    for (std::size_t i = 0; i < r.trajectory.size(); ++i) {
      const MHDState& st = r.trajectory[i];
      const long step = steps == 0 ? 0 : std::lround((st.t - init.t) / cfg.horizon * static_cast<double>(steps));
      if (step % cfg.snapshot_stride != 0 && i + 1 != r.trajectory.size()) continue;
      const std::string tag = "step_" + step_tag(step) + "_";
      if (st.regime != Regime::incompressible) {
        write_snapshot(snap / (tag + "density.mhdf"), st.density);
        out.files.push_back(snap / (tag + "density.mhdf"));
      }
      write_snapshot(snap / (tag + "u.mhdf"), st.u);
      write_snapshot(snap / (tag + "H.mhdf"), st.H);
      out.files.push_back(snap / (tag + "u.mhdf"));
      out.files.push_back(snap / (tag + "H.mhdf"));
    }
  }
  ojson s = base_summary(cfg, hash);
  s["status"] = to_string(r.status);
  s["reason"] = r.reason;
  s["t_final"] = r.trajectory.back().t;
  s["saves"] = r.trajectory.size();
  s["max_energy_residual"] = r.max_energy_residual;
  s["max_div"] = r.max_div;
  out.summary = s.dump();
  out.exit_code = r.status == RunStatus::completed ? 0 : 3;
  return out;
}

ExperimentOutcome do_sweep(const RunConfig& cfg, const std::filesystem::path& dir, const std::string& hash,
                           int threads) {
  ExperimentOutcome out;
  SweepConfig sc = make_sweep_config(cfg);
  sc.threads = threads;
  const SweepResult r = run_sweep(sc);

  Report table{"sweep", hash, "eps", {}};
  Report series{"functionals", hash, "t", {}};
  for (const SweepEntry& e : r.entries) {
    ojson row;
    row["eps"] = e.eps;
    row["sup_W0"] = e.sup_W0();
    row["sup_Walpha"] = e.sup_Walpha();
    row["int_W0"] = e.int_W0();
    row["Y_norm"] = e.Y_norm();
    row["status"] = to_string(e.status);
    table.records.push_back(row);
    if (!e.valid()) continue;
    for (const FunctionalSample& f : e.functionals.samples) {
      ojson rec;
      rec["eps"] = e.eps;
      rec["t"] = f.t;
      for (int k = 0; k < 2; ++k) {
        const std::string b = k == 0 ? "0" : "alpha";
        rec["W" + b] = f.W[k];
        rec["X" + b] = f.X[k];
        rec["Y" + b] = f.Y[k];
        rec["V" + b] = f.V[k];
        rec["sup_w" + b] = f.sup_w[k];
        rec["sup_B" + b] = f.sup_B[k];
      }
      series.records.push_back(rec);
    }
  }
  out.files.push_back(emit_report(table, ReportFormat::csv, dir));
  if (!series.records.empty()) out.files.push_back(emit_report(series, ReportFormat::ndjson, dir));

  ojson s = base_summary(cfg, hash);
  s["V0"] = r.V[0];
  s["Valpha"] = r.V[1];
  s["theoretical_order"] = r.theoretical_order;
  auto fit = [&](const std::vector<RatePoint>& pts, const std::string& name) {
    try {
      const RateFit f = fit_rate(pts, r.theoretical_order);
      out.files.push_back(write_text(dir / ("rate_fit_" + name + "-" + hash + ".json"), f.to_json() + "\n"));
      s["order_" + name] = f.order;
    } catch (const std::invalid_argument& e) {
      s["order_" + name] = nullptr;
      s["fit_" + name + "_error"] = e.what();
    }
  };
  fit(r.velocity_errors(), "velocity");
  fit(r.magnetic_errors(), "magnetic");
  int failed = 0;
  for (const SweepEntry& e : r.entries) failed += e.valid() ? 0 : 1;
  s["failed_runs"] = failed;
  out.summary = s.dump();
  return out;
}

ExperimentOutcome do_audit(const RunConfig& cfg, const std::filesystem::path& dir, const std::string& hash,
                           int threads) {
  ExperimentOutcome out;
  AuditConfig ac = make_audit_config(cfg);
  ac.threads = threads;
  const AuditReport r = audit_estimate(parse_audit_kind(cfg.audit.estimate), cfg.audit.samples, cfg.seed, ac);
  Report rep{"audit", hash, "sample", {}};
  std::istringstream lines(r.to_ndjson());
  std::string line;
  while (std::getline(lines, line)) rep.records.push_back(ojson::parse(line));
  out.files.push_back(emit_report(rep, ReportFormat::ndjson, dir));
  out.files.push_back(emit_report(rep, ReportFormat::csv, dir));
  ojson s = base_summary(cfg, hash);
  s["estimate"] = r.estimate;
  s["samples"] = r.sample_count();
  s["excluded"] = r.excluded();
  s["max_ratio"] = r.max_ratio();
  s["rescale_spread"] = r.rescale_spread();
  out.summary = s.dump();
  return out;
}

ExperimentOutcome do_decay(const RunConfig& cfg, const std::filesystem::path& dir, const std::string& hash) {
  ExperimentOutcome out;
  const DecayFit f = dispersive_decay_experiment(make_decay_config(cfg));
  Report rep{"decay", hash, "t", {}};
  for (std::size_t i = 0; i < f.times.size(); ++i) {
    ojson rec;
    rec["t"] = f.times[i];
    rec["sup_b"] = f.amplitudes[i];
    rep.records.push_back(rec);
  }
  out.files.push_back(emit_report(rep, ReportFormat::csv, dir));
  out.files.push_back(emit_report(rep, ReportFormat::plotdata, dir));
  ojson s = base_summary(cfg, hash);
  s["gamma"] = f.gamma;
  s["intercept"] = f.intercept;
  s["residual"] = f.residual;
  s["theoretical"] = f.theoretical;
  out.summary = s.dump();
  return out;
}

ExperimentOutcome do_norms(const RunConfig& cfg, const std::filesystem::path& dir, const std::string& hash) {
  ExperimentOutcome out;
  const MHDState st = make_initial_state(cfg);
  std::vector<NormRequest> req = cfg.stepper.norms;
  if (req.empty()) {
    const double h = 0.5 * cfg.grid.d;
    for (const char* field : {"density", "u", "H"}) {
      if (st.regime == Regime::incompressible && std::string(field) == "density") continue;
      for (double s : {h - 1.0, h}) {
        for (Lebesgue p : {Lebesgue::two, Lebesgue::inf}) req.push_back({field, s, p});
      }
    }
  }
  const Diagnostics d = diagnose(st, cfg.physics, req);
  Report rep{"norms", hash, "s", {}};
  for (std::size_t i = 0; i < req.size(); ++i) {
    ojson rec;
    rec["field"] = req[i].field;
    rec["s"] = req[i].s;
    rec["p"] = req[i].p == Lebesgue::two ? "2" : "inf";
    rec["norm"] = d.norms[i].second;
    rep.records.push_back(rec);
  }
  out.files.push_back(emit_report(rep, ReportFormat::ndjson, dir));
  out.files.push_back(emit_report(rep, ReportFormat::csv, dir));
  ojson s = base_summary(cfg, hash);
  s["energy"] = d.energy;
  s["count"] = req.size();
  out.summary = s.dump();
  return out;
}

}  // namespace

Report diagnostics_report(const std::vector<Diagnostics>& series, const std::string& config_hash) {
  Report rep{"diagnostics", config_hash, "t", {}};
  for (const Diagnostics& d : series) {
    ojson j = ojson::parse(d.to_json());
    ojson flat;
    for (const auto& [k, v] : j.items()) {
      if (k != "norms") flat[k] = v;
    }
    for (const auto& [k, v] : j["norms"].items()) flat["norm_" + k] = v;
    rep.records.push_back(flat);
  }
  return rep;
}

std::filesystem::path output_directory(const std::string& output) {
  const char* root = std::getenv("MHDLAB_OUTPUT_ROOT");
  return std::filesystem::path(root && *root ? root : ".") / output;
}

ExperimentOutcome run_experiment(const RunConfig& cfg, const std::filesystem::path& out_dir, int threads) {
  const std::string hash = config_hash(cfg);
  std::filesystem::create_directories(out_dir);
  ExperimentOutcome out;
  switch (cfg.experiment) {
    case Experiment::run: out = do_run(cfg, out_dir, hash); break;
    case Experiment::sweep: out = do_sweep(cfg, out_dir, hash, threads); break;
    case Experiment::audit: out = do_audit(cfg, out_dir, hash, threads); break;
    case Experiment::decay: out = do_decay(cfg, out_dir, hash); break;
    case Experiment::norms: out = do_norms(cfg, out_dir, hash); break;
  }
  out.files.push_back(write_text(out_dir / ("config-" + hash + ".json"), canonical_config(cfg) + "\n"));
  out.files.push_back(write_text(out_dir / ("summary-" + hash + ".json"), out.summary + "\n"));
  return out;
}

}  // namespace mhdlab
