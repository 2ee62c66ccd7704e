// Copyright 2026 The isacopt Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// isacopt: exact admission control and discrete-phase beamforming.
//
// Exit codes: 0 success, 1 internal error, 2 config error, 3 solver limit
// reached, 4 I/O error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isac/bnb.hpp"
#include "isac/config.hpp"
#include "isac/mps.hpp"
#include "isac/reform.hpp"
#include "isac/runner.hpp"

namespace fs = std::filesystem;
using namespace isac;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitLimit = 3;
constexpr int kExitIo = 4;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::string solver = "opt";
  std::optional<double> gap;
  bool symmetry_break = false;
  bool export_mps = false;
  bool reproducible = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON run configuration");
  cmd->add_option("--seed", f.seed, "Channel and baseline seed (overrides the config)");
  cmd->add_option("--out", f.out_dir, "Output directory")->capture_default_str();
  cmd->add_flag("--reproducible", f.reproducible, "Write zero timings so reruns are byte-identical");
}

void add_solver(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--solver", f.solver, "opt, bl2, bl3, rand or oracle")->capture_default_str();
  cmd->add_option("--gap", f.gap, "Absolute optimality gap of the exact solver");
  cmd->add_flag("--symmetry-break", f.symmetry_break, "Fix antenna 0 to the first phase");
}

// Desk-scale defaults used without --config.
RunConfig default_config() {
  RunConfig cfg;
  cfg.geometry.n_antennas = 6;
  cfg.instance.phase_bits = 2;
  return cfg;
}

RunConfig load(const CommonFlags& f) {
  if (!f.config_path.empty() && !std::ifstream(f.config_path)) {
    throw IoError("cannot read " + f.config_path);
  }
  RunConfig cfg = f.config_path.empty() ? default_config() : load_config(f.config_path);
  if (f.seed) cfg.geometry.seed = *f.seed;
  if (f.gap) cfg.solver.gap = *f.gap;
  if (f.symmetry_break) cfg.solver.symmetry_break = true;
  cfg.validate();
  return cfg;
}

Method method_of(const std::string& name) {
  auto m = parse_method(name);
  if (!m) throw ConfigError("--solver", 0, "unknown method '" + name + "'");
  return *m;
}

fs::path out_dir(const CommonFlags& f) {
  const fs::path dir(f.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

void print_summary(const MethodRun& run) {
  const Solution& s = run.solution;
  std::printf("%s: status=%s", to_string(run.method), run.status.c_str());
  if (run.has_solution) {
    std::printf(" f=%.9g f_com=%.0f f_sen=%.6g admitted=%s nodes=%ld", s.f, s.f_com, s.f_sen,
                admitted_mask(s.admitted).c_str(), s.stats.nodes);
  }
  std::printf("\n");
}

int cmd_solve(const CommonFlags& f) {
  const RunConfig cfg = load(f);
  const ProblemInstance instance = build_instance(cfg);
  const fs::path dir = out_dir(f);
  if (f.export_mps) write_file(dir / "model.mps", export_mps(build_milp(instance)));
  const MethodRun run = run_method(method_of(f.solver), instance, cfg);
  write_file(dir / "solution.json", solution_json(instance, run, f.reproducible));
  print_summary(run);
  return run.limit_hit ? kExitLimit : 0;
}

int cmd_sweep(const CommonFlags& f) {
  const RunConfig cfg = load(f);
  if (!cfg.sweep) throw ConfigError("sweep", 0, "the sweep command needs a \"sweep\" object");
  const std::vector<SweepRow> rows = run_sweep(cfg);
  std::ostringstream csv;
  write_csv(csv, rows, f.reproducible);
  const fs::path path = out_dir(f) / cfg.sweep->output;
  write_file(path, csv.str());
  std::printf("wrote %s (%zu rows)\n", path.string().c_str(), rows.size());
  for (const SweepRow& r : rows) {
    if (r.run.limit_hit) return kExitLimit;
  }
  return 0;
}

int cmd_compare(const CommonFlags& f, const std::vector<std::string>& methods, std::optional<long> trials) {
  RunConfig cfg = load(f);
  if (!cfg.sweep) throw ConfigError("sweep", 0, "the compare command needs a \"sweep\" object");
  if (!methods.empty()) {
    cfg.sweep->methods.clear();
    for (const std::string& m : methods) cfg.sweep->methods.push_back(method_of(m));
  }
  if (cfg.sweep->methods.size() < 2) throw ConfigError("--methods", 0, "compare needs at least two methods");
  if (trials) {
    cfg.rand_trials = *trials;
    cfg.bl3.trials = *trials;
  }
  cfg.validate();
  const std::vector<SweepRow> rows = run_sweep(cfg);
  const auto gains = same_region_gains(rows, cfg.sweep->methods.front());
  std::ostringstream csv;
  write_compare_csv(csv, rows, gains, f.reproducible);
  const fs::path path = out_dir(f) / cfg.sweep->output;
  write_file(path, csv.str());
  for (const GainSummary& g : gains) {
    std::printf("gain of %s over %s: %.6g over %d points\n", to_string(cfg.sweep->methods.front()),
                to_string(g.baseline), g.mean_gain, g.points);
  }
  for (const SweepRow& r : rows) {
    if (r.run.limit_hit) return kExitLimit;
  }
  return 0;
}

int cmd_scenario(const CommonFlags& f, const std::string& preset) {
  std::vector<ScenarioJob> jobs;
  if (!preset.empty()) {
    jobs = scenario_preset(preset, f.seed.value_or(1));
  } else {
    RunConfig cfg = load(f);
    if (!cfg.sweep) throw ConfigError("sweep", 0, "a scenario config needs a \"sweep\" object");
    fs::path stem = fs::path(cfg.sweep->output).stem();
    jobs.push_back(ScenarioJob{stem.string(), cfg, false, cfg.sweep->methods.size() > 1});
  }
  bool limit = false;
  const std::vector<fs::path> written = run_scenario(jobs, out_dir(f), f.reproducible, &limit);
  for (const fs::path& p : written) std::printf("wrote %s\n", p.string().c_str());
  return limit ? kExitLimit : 0;
}

int cmd_oracle(const CommonFlags& f) {
  const RunConfig cfg = load(f);
  const ProblemInstance instance = build_instance(cfg);
  const MethodRun es = run_method(Method::kOracle, instance, cfg);
  print_summary(es);
  if (!es.has_solution) return kExitLimit;
  const MethodRun opt = run_method(Method::kOpt, instance, cfg);
  print_summary(opt);
  const fs::path dir = out_dir(f);
  write_file(dir / "oracle.json", solution_json(instance, es, f.reproducible));
  write_file(dir / "solution.json", solution_json(instance, opt, f.reproducible));
  const double diff = std::abs(es.solution.f - opt.solution.f);
  std::printf("|f_opt - f_oracle| = %.3g\n", diff);
  if (opt.limit_hit) return kExitLimit;
  return diff <= 1e-6 ? 0 : kExitInternal;
}

int cmd_export_mps(const CommonFlags& f) {
  RunConfig cfg = load(f);
  const ProblemInstance instance = build_instance(cfg);
  MilpModel model = build_milp(instance);
  if (cfg.solver.symmetry_break) model = apply_symmetry_breaking(std::move(model));
  const fs::path path = out_dir(f) / "model.mps";
  write_file(path, export_mps(model));
  std::printf("wrote %s (%d rows, %d columns)\n", path.string().c_str(), model.row_count(), model.column_count());
  return 0;
}

int cmd_beampattern(const CommonFlags& f) {
  const RunConfig cfg = load(f);
  const ProblemInstance instance = build_instance(cfg);
  const MethodRun run = run_method(method_of(f.solver), instance, cfg);
  print_summary(run);
  if (!run.has_solution) return kExitLimit;
  std::ostringstream csv;
  write_beampattern_csv(csv, instance, run.solution);
  const fs::path path = out_dir(f) / "beampattern.csv";
  write_file(path, csv.str());
  std::printf("wrote %s\n", path.string().c_str());
  return run.limit_hit ? kExitLimit : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact admission control and discrete-phase beamforming for sensing and communication"};
  app.require_subcommand(1);
  CommonFlags flags;
  std::string preset;
  std::vector<std::string> methods;
  std::optional<long> trials;

  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one instance and write solution.json");
  add_common(solve_cmd, flags);
  add_solver(solve_cmd, flags);
  solve_cmd->add_flag("--export-mps", flags.export_mps, "Also write model.mps");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run the sweep of the config");
  add_common(sweep_cmd, flags);
  sweep_cmd->add_option("--gap", flags.gap, "Absolute optimality gap of the exact solver");
  sweep_cmd->add_flag("--symmetry-break", flags.symmetry_break, "Fix antenna 0 to the first phase");

  CLI::App* scenario_cmd = app.add_subcommand("scenario", "Run a desk-scale preset (I-IV) or a config");
  add_common(scenario_cmd, flags);
  scenario_cmd->add_option("--preset", preset, "I, II, III or IV");

  CLI::App* compare_cmd = app.add_subcommand("compare", "Compare methods over the sweep of the config");
  add_common(compare_cmd, flags);
  compare_cmd->add_option("--methods", methods, "Methods, the first is the reference")->delimiter(',');
  compare_cmd->add_option("--trials", trials, "Random trials for rand and bl3");

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Check the exact solver against exhaustive search");
  add_common(oracle_cmd, flags);
  oracle_cmd->add_flag("--symmetry-break", flags.symmetry_break, "Fix antenna 0 to the first phase");

  CLI::App* mps_cmd = app.add_subcommand("export-mps", "Write the MILP as model.mps");
  add_common(mps_cmd, flags);
  mps_cmd->add_flag("--symmetry-break", flags.symmetry_break, "Fix antenna 0 to the first phase");

  CLI::App* beam_cmd = app.add_subcommand("beampattern", "Solve and write beampattern.csv");
  add_common(beam_cmd, flags);
  add_solver(beam_cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*solve_cmd) return cmd_solve(flags);
    if (*sweep_cmd) return cmd_sweep(flags);
    if (*scenario_cmd) return cmd_scenario(flags, preset);
    if (*compare_cmd) return cmd_compare(flags, methods, trials);
    if (*oracle_cmd) return cmd_oracle(flags);
    if (*mps_cmd) return cmd_export_mps(flags);
    if (*beam_cmd) return cmd_beampattern(flags);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
  return kExitInternal;
}
