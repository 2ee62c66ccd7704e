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

#include "isac/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "isac/baselines.hpp"
#include "isac/bnb.hpp"
#include "isac/reform.hpp"
#include "json.hpp"

namespace isac {
namespace {

std::string num(double v, int digits = 10) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void check_feasible(const ProblemInstance& instance, const MethodRun& run) {
  if (!run.has_solution) return;
  if (auto why = feasibility_violation(instance, run.solution)) {
    throw std::logic_error(std::string(to_string(run.method)) + " produced an infeasible solution: " + *why);
  }
}

std::vector<double> grid(double first, double last, double step) {
  std::vector<double> out;
  for (double v = first; v <= last + 1e-9; v += step) out.push_back(v);
  return out;
}

RunConfig desk_base(std::uint64_t seed) {
  RunConfig cfg;
  cfg.geometry.n_antennas = 6;
  cfg.geometry.seed = seed;
  cfg.instance.phase_bits = 2;
  return cfg;
}

ScenarioJob power_job(std::string name, RunConfig cfg) {
  SweepSpec sweep;
  sweep.parameter = SweepParameter::kTxPower;
  sweep.values = grid(20.0, 42.0, 2.0);
  sweep.methods = {Method::kOpt};
  sweep.output = name + ".csv";
  cfg.sweep = sweep;
  return ScenarioJob{std::move(name), std::move(cfg), false, false};
}

}  // namespace

ProblemInstance build_instance(const RunConfig& config) {
  return make_instance(config.geometry, config.instance);
}

MethodRun run_method(Method method, const ProblemInstance& instance, const RunConfig& config) {
  MethodRun run;
  run.method = method;
  switch (method) {
    case Method::kOpt:
      run.solution = solve(build_milp(instance), instance, config.solver);
      break;
    case Method::kBl2: {
      Bl2Options options;
      options.bnb = config.solver;
      run.solution = bl2_inner_approx(instance, options).solution;
      break;
    }
    case Method::kBl3: {
      Bl3Options options = config.bl3;
      options.seed = config.geometry.seed;
      run.solution = bl3_sca(instance, options).solution;
      break;
    }
    case Method::kRand:
      run.solution = rand_baseline(instance, config.rand_trials, config.geometry.seed).solution;
      break;
    case Method::kOracle:
      try {
        run.solution = exhaustive_search(instance);
      } catch (const GuardExceeded&) {
        run.has_solution = false;
        run.status = "guard_exceeded";
        run.limit_hit = true;
        return run;
      }
      break;
  }
  run.status = to_string(run.solution.stats.status);
  run.limit_hit = run.solution.stats.status == SolveStatus::kNodeLimit ||
                  run.solution.stats.status == SolveStatus::kTimeLimit;
  check_feasible(instance, run);
  return run;
}

std::vector<SweepRow> run_sweep(const RunConfig& config) {
  if (!config.sweep) throw ConfigError("sweep", 0, "no sweep given");
  const SweepSpec& spec = *config.sweep;
  spec.validate();
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    RunConfig point = apply_sweep_value(config, spec.parameter, spec.values[i]);
    if (!spec.fixed_channels) point.geometry.seed = config.geometry.seed + i;
    point.validate();
    const ProblemInstance instance = build_instance(point);
    for (Method m : spec.methods) {
      rows.push_back(SweepRow{to_string(spec.parameter), spec.values[i], run_method(m, instance, point)});
    }
  }
  return rows;
}

std::string admitted_mask(std::span<const int> admitted) {
  std::string mask;
  for (int a : admitted) mask.push_back(a ? '1' : '0');
  return mask;
}

void write_csv(std::ostream& out, std::span<const SweepRow> rows, bool reproducible) {
  out << kCsvHeader << '\n';
  for (const SweepRow& row : rows) {
    const Solution& s = row.run.solution;
    out << row.parameter << ',' << num(row.value) << ',' << to_string(row.run.method) << ',';
    if (row.run.has_solution) {
      out << num(s.f) << ',' << num(s.f_com) << ',' << num(s.f_sen) << ',' << num(s.tau) << ','
          << admitted_mask(s.admitted);
    } else {
      out << ",,,,";
    }
    out << ',' << row.run.status << ',' << num(s.stats.gap, 6) << ',' << s.stats.nodes << ','
        << s.stats.lp_iterations << ',' << (reproducible ? "0" : num(s.stats.wall_ms, 6)) << '\n';
  }
}

std::vector<GainSummary> same_region_gains(std::span<const SweepRow> rows, Method reference) {
  // (parameter, value) -> method -> solution
  std::map<std::pair<std::string, double>, std::map<Method, const MethodRun*>> points;
  std::vector<Method> order;
  for (const SweepRow& row : rows) {
    if (!row.run.has_solution) continue;
    points[{row.parameter, row.value}][row.run.method] = &row.run;
    if (std::find(order.begin(), order.end(), row.run.method) == order.end()) order.push_back(row.run.method);
  }
  const bool self = std::count_if(rows.begin(), rows.end(), [&](const SweepRow& r) { return r.run.method == reference; }) >
                    static_cast<long>(points.size());
  std::vector<GainSummary> out;
  for (Method base : order) {
    if (base == reference && !self) continue;
    GainSummary g{base, 0.0, 0};
    double sum = 0.0;
    for (const auto& [key, runs] : points) {
      auto ref = runs.find(reference);
      auto other = runs.find(base);
      if (ref == runs.end() || other == runs.end()) continue;
      const Solution& a = ref->second->solution;
      const Solution& b = other->second->solution;
      if (a.f_com != b.f_com || b.f <= 0.0) continue;
      sum += (a.f - b.f) / b.f;
      ++g.points;
    }
    if (g.points > 0) g.mean_gain = sum / g.points;
    out.push_back(g);
  }
  return out;
}

void write_compare_csv(std::ostream& out, std::span<const SweepRow> rows,
                       std::span<const GainSummary> gains, bool reproducible) {
  write_csv(out, rows, reproducible);
  for (const GainSummary& g : gains) {
    out << "summary,," << to_string(g.baseline) << ',' << num(g.mean_gain) << ",,,,,mean_gain,," << g.points
        << ",,0\n";
  }
}

void write_beampattern_csv(std::ostream& out, const ProblemInstance& instance, const Solution& solution) {
  std::vector<double> angles(kBeampatternPoints);
  for (int i = 0; i < kBeampatternPoints; ++i) angles[static_cast<std::size_t>(i)] = 0.25 * i;
  const std::vector<double> snr =
      beampattern(solution.w, angles, instance.alpha, instance.noise_sen_mw, instance.n_antennas);
  out << "angle_deg,snr_sen,snr_sen_db,in_grid\n";
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const bool in_grid = std::any_of(instance.grid_deg.begin(), instance.grid_deg.end(),
                                     [&](double g) { return std::abs(g - angles[i]) < 0.125; });
    out << num(angles[i]) << ',' << num(snr[i]) << ','
        << num(snr[i] > 0 ? 10.0 * std::log10(snr[i]) : -HUGE_VAL) << ',' << (in_grid ? 1 : 0) << '\n';
  }
}

std::string solution_json(const ProblemInstance& instance, const MethodRun& run, bool reproducible) {
  nlohmann::ordered_json j;
  j["method"] = to_string(run.method);
  j["status"] = run.status;
  if (run.has_solution) {
    const Solution& s = run.solution;
    j["f"] = s.f;
    j["f_com"] = s.f_com;
    j["f_sen"] = s.f_sen;
    j["tau"] = s.tau;
    j["admitted"] = s.admitted;
    j["phase_index"] = s.phase_index;
    std::vector<double> phase_deg, re, im;
    for (Eigen::Index n = 0; n < s.w.size(); ++n) {
      double deg = std::arg(s.w[n]) * 180.0 / kPi;
      if (deg < 0) deg += 360.0;
      phase_deg.push_back(deg);
      re.push_back(s.w[n].real());
      im.push_back(s.w[n].imag());
    }
    j["phase_deg"] = phase_deg;
    j["w_real"] = re;
    j["w_imag"] = im;
    std::vector<double> com, sen;
    for (const cmat& m : instance.user_snr) com.push_back(snr_com(s.w, m));
    for (const cmat& m : instance.target_snr) sen.push_back(snr_sen(s.w, m));
    j["snr_com"] = com;
    j["snr_sen_grid"] = sen;
    j["grid_deg"] = instance.grid_deg;
    j["snr_threshold"] = instance.snr_threshold;
    j["rho_com"] = instance.rho_com;
    j["rho_sen"] = instance.rho_sen;
    j["tau_max"] = instance.tau_max;
    j["stats"] = {{"nodes", s.stats.nodes},
                  {"lp_iterations", s.stats.lp_iterations},
                  {"gap", s.stats.gap},
                  {"wall_ms", reproducible ? 0.0 : s.stats.wall_ms}};
  }
  return j.dump(2) + "\n";
}

std::vector<ScenarioJob> scenario_preset(std::string_view preset, std::uint64_t seed) {
  std::vector<ScenarioJob> jobs;
  if (preset == "I") {
    // Antennas, power and phase resolution. N = 6 stops at two bits.
    const std::pair<int, int> sizes[] = {{4, 1}, {4, 2}, {4, 3}, {6, 1}, {6, 2}};
    for (auto [n, q] : sizes) {
      RunConfig cfg = desk_base(seed);
      cfg.geometry.n_antennas = n;
      cfg.instance.phase_bits = q;
      jobs.push_back(power_job("scenario1_n" + std::to_string(n) + "_q" + std::to_string(q), cfg));
    }
  } else if (preset == "II") {
    // Threshold and angular uncertainty at N = 6.
    const struct {
      const char* name;
      double gamma;
      double delta;
    } cases[] = {{"scenario2_gamma30_delta0", 30.0, 0.0},
                 {"scenario2_gamma60_delta0", 60.0, 0.0},
                 {"scenario2_gamma30_delta8", 30.0, 8.0}};
    for (const auto& c : cases) {
      RunConfig cfg = desk_base(seed);
      cfg.instance.snr_threshold = c.gamma;
      cfg.geometry.angle_uncertainty_deg = c.delta;
      jobs.push_back(power_job(c.name, cfg));
    }
  } else if (preset == "III") {
    // Beampatterns with all users admitted together.
    RunConfig cfg = desk_base(seed);
    cfg.instance.couple_admission = true;
    SweepSpec sweep;
    sweep.parameter = SweepParameter::kSnrThreshold;
    sweep.values = {0.0, 30.0, 60.0, 80.0};
    sweep.output = "scenario3.csv";
    cfg.sweep = sweep;
    jobs.push_back(ScenarioJob{"scenario3", cfg, true, false});
  } else if (preset == "IV") {
    // Common user distance, all methods. Eight antennas so that 10^4 random
    // tuples cover only a fraction of the 4^8 candidates.
    RunConfig cfg = desk_base(seed);
    cfg.geometry.n_antennas = 8;
    SweepSpec sweep;
    sweep.parameter = SweepParameter::kDistance;
    sweep.values = grid(10.0, 70.0, 4.0);
    sweep.methods = {Method::kOpt, Method::kBl2, Method::kBl3, Method::kRand};
    sweep.output = "scenario4.csv";
    cfg.sweep = sweep;
    jobs.push_back(ScenarioJob{"scenario4", cfg, false, true});
  } else {
    throw ConfigError("scenario", 0, "unknown preset '" + std::string(preset) + "' (expected I, II, III or IV)");
  }
  return jobs;
}

std::vector<std::filesystem::path> run_scenario(std::span<const ScenarioJob> jobs,
                                                const std::filesystem::path& out_dir, bool reproducible,
                                                bool* limit_hit) {
  std::vector<std::filesystem::path> written;
  auto open = [&](const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    written.push_back(path);
    return out;
  };
  for (const ScenarioJob& job : jobs) {
    const std::vector<SweepRow> rows = run_sweep(job.config);
    if (limit_hit) {
      for (const SweepRow& r : rows) *limit_hit = *limit_hit || r.run.limit_hit;
    }
    {
      std::ofstream out = open(out_dir / (job.name + ".csv"));
      if (job.compare) {
        const auto gains = same_region_gains(rows, job.config.sweep->methods.front());
        write_compare_csv(out, rows, gains, reproducible);
      } else {
        write_csv(out, rows, reproducible);
      }
      if (!out) throw IoError("write failed for " + (out_dir / (job.name + ".csv")).string());
    }
    if (!job.beampatterns) continue;
    const Method first = job.config.sweep->methods.front();
    for (const SweepRow& row : rows) {
      if (row.run.method != first || !row.run.has_solution) continue;
      const RunConfig point = apply_sweep_value(job.config, job.config.sweep->parameter, row.value);
      const ProblemInstance instance = build_instance(point);
      std::ofstream out = open(out_dir / (job.name + "_beampattern_" + row.parameter + "_" + num(row.value) + ".csv"));
      write_beampattern_csv(out, instance, row.run.solution);
    }
  }
  return written;
}

}  // namespace isac
