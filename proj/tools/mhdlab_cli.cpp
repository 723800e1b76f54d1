// Command-line front end. Exit codes: 0 success, 1 unexpected failure,
// 2 invalid input, 3 numerical abort.

#include "mhdlab/besov.hpp"
#include "mhdlab/experiments.hpp"
#include "mhdlab/snapshot.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

namespace {

using namespace mhdlab;

int run_config(Experiment expected, const std::string& path, int threads) {
  const RunConfig cfg = load_config(path);
  if (cfg.experiment != expected) {
    throw ConfigError("experiment: config is for '" + to_string(cfg.experiment) + "', not '" +
                      to_string(expected) + "'");
  }
  const ExperimentOutcome out = run_experiment(cfg, output_directory(cfg.output), threads);
  std::cout << out.summary << '\n';
  return out.exit_code;
}

int snapshot_norm(const std::string& path, double s, const std::string& p) {
  if (p != "2" && p != "inf") throw std::invalid_argument("--p must be 2 or inf");
  const SpectralField f = read_snapshot(path);
  nlohmann::ordered_json j;
  j["file"] = path;
  j["s"] = s;
  j["p"] = p;
  j["components"] = f.components();
  j["norm"] = besov_norm(f, {s, p == "2" ? Lebesgue::two : Lebesgue::inf});
  std::cout << j.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral experiments for compressible and incompressible MHD on the periodic box"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads for sweeps and audits (0 = hardware)")
      ->check(CLI::NonNegativeNumber);

  std::string config;
  struct Command {
    Experiment experiment;
    const char* help;
  };
  const Command commands[] = {{Experiment::run, "integrate one configuration"},
                              {Experiment::sweep, "low-Mach sweep over eps"},
                              {Experiment::audit, "audit an a-priori estimate"},
                              {Experiment::decay, "dispersive decay of an acoustic pulse"}};
  std::vector<std::pair<CLI::App*, Experiment>> subs;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(to_string(c.experiment), c.help);
    sub->add_option("config", config, "JSON config file")->required();
    subs.emplace_back(sub, c.experiment);
  }
  CLI::App* norms = app.add_subcommand("norms", "Besov norm of a snapshot, or the norms experiment of a config");
  std::string input;
  double s = 0.0;
  std::string p = "2";
  norms->add_option("input", input, "snapshot (.mhdf) or JSON config")->required();
  norms->add_option("--s", s, "regularity index");
  norms->add_option("--p", p, "Lebesgue index: 2 or inf");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const auto& [sub, exp] : subs) {
      if (sub->parsed()) return run_config(exp, config, threads);
    }
    if (is_snapshot(input)) return snapshot_norm(input, s, p);
    return run_config(Experiment::norms, input, threads);
  } catch (const NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const SnapshotError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
