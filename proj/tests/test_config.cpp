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

#include <sstream>

#include "doctest.h"
#include "isac/config.hpp"
#include "isac/runner.hpp"

using namespace isac;

namespace {

ConfigError error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected a ConfigError");
  return ConfigError("", 0, "");
}

}  // namespace

TEST_CASE("empty document keeps the defaults") {
  const RunConfig cfg = parse_config("{}");
  CHECK(cfg.geometry.n_antennas == 10);
  CHECK(cfg.geometry.n_users == 5);
  CHECK(cfg.geometry.tx_power_dbm == 36.0);
  CHECK(cfg.instance.phase_bits == 3);
  CHECK(cfg.instance.snr_threshold == 30.0);
  CHECK_FALSE(cfg.sweep.has_value());
}

TEST_CASE("full document") {
  const RunConfig cfg = parse_config(R"({
    "n_antennas": 6, "n_users": 3, "tx_power_dbm": 30,
    "user_angles_deg": [20, 40, 60], "user_distance_m": 25,
    "rician_factor": "inf", "seed": 9,
    "phase_bits": 2, "snr_threshold": 60, "couple_admission": true, "rho_sen": 0.5,
    "solver": {"gap": 1e-4, "node_limit": 100, "symmetry_break": true, "node_order": "depth_first"},
    "baselines": {"rand_trials": 50, "sca_polygon_sides": 8},
    "sweep": {"parameter": "snr_threshold", "values": [30, 60], "methods": ["opt", "rand"],
              "output": "gamma.csv"}
  })");
  CHECK(cfg.geometry.n_antennas == 6);
  CHECK(cfg.geometry.user_angles_deg == std::vector<double>{20, 40, 60});
  CHECK(cfg.geometry.user_distances_m == std::vector<double>{25, 25, 25});
  CHECK(std::isinf(cfg.geometry.rician_factor));
  CHECK(cfg.geometry.seed == 9);
  CHECK(cfg.instance.couple_admission);
  CHECK(cfg.instance.rho_sen.value() == 0.5);
  CHECK_FALSE(cfg.instance.rho_com.has_value());
  CHECK(cfg.solver.gap == 1e-4);
  CHECK(cfg.solver.node_limit == 100);
  CHECK(cfg.solver.symmetry_break);
  CHECK(cfg.solver.node_order == NodeOrder::kDepthFirst);
  CHECK(cfg.rand_trials == 50);
  CHECK(cfg.bl3.polygon_sides == 8);
  REQUIRE(cfg.sweep.has_value());
  CHECK(cfg.sweep->parameter == SweepParameter::kSnrThreshold);
  CHECK(cfg.sweep->methods == std::vector<Method>{Method::kOpt, Method::kRand});
  CHECK(cfg.sweep->output == "gamma.csv");
}

TEST_CASE("errors carry field and line") {
  const ConfigError type = error_of("{\n  \"n_antennas\": 4,\n  \"phase_bits\": \"two\"\n}");
  CHECK(type.field() == "phase_bits");
  CHECK(type.line() == 3);

  const ConfigError unknown = error_of("{\n\n  \"antennas\": 4\n}");
  CHECK(unknown.field() == "antennas");
  CHECK(unknown.line() == 3);

  const ConfigError nested = error_of("{\n  \"solver\": {\n    \"gap\": -1\n  }\n}");
  CHECK(nested.field() == "solver.gap");
  CHECK(nested.line() == 3);

  const ConfigError syntax = error_of("{\n  \"n_antennas\": 4,\n  \"seed\": \n}");
  CHECK(syntax.line() == 4);

  CHECK(error_of(R"({"sweep": {"parameter": "volume", "values": [1]}})").field() == "sweep.parameter");
  CHECK(error_of(R"({"sweep": {"parameter": "tx_power_dbm", "values": []}})").field() == "sweep.values");
  CHECK(error_of(R"({"sweep": {"parameter": "phase_bits", "values": [1.5]}})").field() == "sweep.values");
  CHECK(error_of(R"({"n_antennas": 0})").field().empty());
}

TEST_CASE("oracle sweeps respect the enumeration guard") {
  CHECK_NOTHROW(parse_config(R"({"n_antennas": 3, "phase_bits": 2,
      "sweep": {"parameter": "tx_power_dbm", "values": [30], "methods": ["oracle"]}})"));
  CHECK(error_of(R"({"n_antennas": 10, "phase_bits": 3,
      "sweep": {"parameter": "tx_power_dbm", "values": [30], "methods": ["oracle"]}})")
            .field() == "sweep.methods");
}

TEST_CASE("sweep values land on the right field") {
  const RunConfig base = parse_config(R"({"n_antennas": 4})");
  CHECK(apply_sweep_value(base, SweepParameter::kTxPower, 22).geometry.tx_power_dbm == 22);
  CHECK(apply_sweep_value(base, SweepParameter::kSnrThreshold, 80).instance.snr_threshold == 80);
  CHECK(apply_sweep_value(base, SweepParameter::kAngleUncertainty, 8).geometry.angle_uncertainty_deg == 8);
  CHECK(apply_sweep_value(base, SweepParameter::kAntennas, 6).geometry.n_antennas == 6);
  CHECK(apply_sweep_value(base, SweepParameter::kPhaseBits, 1).instance.phase_bits == 1);
  CHECK(apply_sweep_value(base, SweepParameter::kDistance, 70).geometry.user_distances_m ==
        std::vector<double>(5, 70.0));
  for (auto p : {SweepParameter::kTxPower, SweepParameter::kSnrThreshold, SweepParameter::kAngleUncertainty,
                 SweepParameter::kAntennas, SweepParameter::kPhaseBits, SweepParameter::kDistance}) {
    CHECK(parse_sweep_parameter(to_string(p)) == p);
  }
  for (auto m : {Method::kOpt, Method::kBl2, Method::kBl3, Method::kRand, Method::kOracle}) {
    CHECK(parse_method(to_string(m)) == m);
  }
}

TEST_CASE("csv layout") {
  RunConfig cfg = parse_config(R"({"n_antennas": 3, "n_users": 2, "phase_bits": 2,
      "sweep": {"parameter": "tx_power_dbm", "values": [24, 30], "methods": ["opt", "oracle", "rand"]}})");
  cfg.rand_trials = 50;
  const auto rows = run_sweep(cfg);
  REQUIRE(rows.size() == 6);
  std::ostringstream out;
  write_csv(out, rows, true);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == kCsvHeader);
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
    CHECK(std::count(line.begin(), line.end(), ',') == 12);
    CHECK(line.substr(line.size() - 2) == ",0");
  }
  CHECK(count == 6);
  CHECK(rows[0].run.solution.f == doctest::Approx(rows[1].run.solution.f).epsilon(1e-9));
}

TEST_CASE("same-region gains") {
  RunConfig cfg = parse_config(R"({"n_antennas": 3, "n_users": 2, "phase_bits": 2,
      "sweep": {"parameter": "user_distance_m", "values": [10, 40, 70], "methods": ["opt", "opt"]}})");
  const auto self = same_region_gains(run_sweep(cfg), Method::kOpt);
  REQUIRE(self.size() == 1);
  CHECK(self[0].mean_gain == 0.0);

  cfg.sweep->methods = {Method::kOpt, Method::kRand};
  cfg.rand_trials = 3;
  const auto rows = run_sweep(cfg);
  const auto gains = same_region_gains(rows, Method::kOpt);
  REQUIRE(gains.size() == 1);
  CHECK(gains[0].baseline == Method::kRand);
  CHECK(gains[0].mean_gain >= 0.0);
}
