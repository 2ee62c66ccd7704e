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

// Workflows behind the command line: single runs, parameter sweeps,
// method comparisons, canned scenarios and the file formats they emit.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "isac/config.hpp"
#include "isac/instance.hpp"

namespace isac {

// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MethodRun {
  Method method = Method::kOpt;
  Solution solution;
  // Solve status, or "guard_exceeded" when the oracle refused the size.
  std::string status;
  bool has_solution = true;
  // Node or time limit stopped the exact solver.
  bool limit_hit = false;
};

// Runs one method; the reported solution has passed the feasibility check
// (std::logic_error otherwise, which would be a solver bug).
MethodRun run_method(Method method, const ProblemInstance& instance, const RunConfig& config);

struct SweepRow {
  std::string parameter;
  double value = 0.0;
  MethodRun run;
};

// Instance for one sweep point of `base`.
ProblemInstance build_instance(const RunConfig& config);

// One row per (value, method), in value order then method order.
std::vector<SweepRow> run_sweep(const RunConfig& config);

std::string admitted_mask(std::span<const int> admitted);

// Fixed column order; timing columns are zero when `reproducible`.
inline constexpr std::string_view kCsvHeader =
    "sweep_param,value,method,f,f_com,f_sen,tau,admitted_mask,status,gap,nodes,lp_iters,time_ms";
void write_csv(std::ostream& out, std::span<const SweepRow> rows, bool reproducible);

struct GainSummary {
  Method baseline = Method::kRand;
  // Mean of (f_ref - f_base) / f_base over points where both admit the same
  // number of users and f_base > 0.
  double mean_gain = 0.0;
  int points = 0;
};

// Gains of `reference` over every other method present in `rows`.
std::vector<GainSummary> same_region_gains(std::span<const SweepRow> rows, Method reference);

// Sweep rows followed by one "summary" row per baseline, with the mean gain in
// the f column and the number of compared points in the nodes column.
void write_compare_csv(std::ostream& out, std::span<const SweepRow> rows,
                       std::span<const GainSummary> gains, bool reproducible);

inline constexpr int kBeampatternPoints = 721;

// angle_deg,snr_sen,snr_sen_db,in_grid over [0, 180] degrees.
void write_beampattern_csv(std::ostream& out, const ProblemInstance& instance, const Solution& solution);

std::string solution_json(const ProblemInstance& instance, const MethodRun& run, bool reproducible);

struct ScenarioJob {
  std::string name;  // file stem of the outputs
  RunConfig config;  // with config.sweep set
  // Also write a beampattern of the first method at every sweep point.
  bool beampatterns = false;
  // Write the compare format (with gain summary) instead of the plain sweep.
  bool compare = false;
};

// Desk-scale presets "I" to "IV". Throws ConfigError for other names.
std::vector<ScenarioJob> scenario_preset(std::string_view preset, std::uint64_t seed);

// Runs every job of a scenario into `out_dir`; returns the written paths.
// Throws IoError when a file cannot be written.
std::vector<std::filesystem::path> run_scenario(std::span<const ScenarioJob> jobs,
                                                const std::filesystem::path& out_dir,
                                                bool reproducible, bool* limit_hit = nullptr);

}  // namespace isac
