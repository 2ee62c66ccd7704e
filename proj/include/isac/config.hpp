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

// JSON run configuration. Every key is optional; missing keys keep the
// defaults of GeometryConfig, InstanceOptions and the solver options.
//
//   {
//     "n_antennas": 6, "n_users": 5, "tx_power_dbm": 36, ...,
//     "phase_bits": 2, "snr_threshold": 30, "couple_admission": false,
//     "solver": {"gap": 1e-6, "node_limit": 0, "time_limit_s": 0,
//                "symmetry_break": false, "node_order": "best_bound"},
//     "baselines": {"rand_trials": 10000, "sca_max_iters": 50, ...},
//     "sweep": {"parameter": "tx_power_dbm", "values": [20, 24],
//               "methods": ["opt", "rand"], "output": "sweep.csv"}
//   }

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "isac/baselines.hpp"
#include "isac/bnb.hpp"
#include "isac/channel.hpp"
#include "isac/instance.hpp"

namespace isac {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, int line, const std::string& what);
  const std::string& field() const { return field_; }
  int line() const { return line_; }  // 0 when unknown

 private:
  std::string field_;
  int line_;
};

enum class SweepParameter { kTxPower, kSnrThreshold, kAngleUncertainty, kAntennas, kPhaseBits, kDistance };

const char* to_string(SweepParameter parameter);
std::optional<SweepParameter> parse_sweep_parameter(std::string_view name);

enum class Method { kOpt, kBl2, kBl3, kRand, kOracle };

const char* to_string(Method method);
std::optional<Method> parse_method(std::string_view name);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::kTxPower;
  std::vector<double> values;
  std::vector<Method> methods{Method::kOpt};
  std::string output = "sweep.csv";
  // Keep one channel draw across points (the seed never changes per point).
  bool fixed_channels = true;

  void validate() const;
};

struct RunConfig {
  GeometryConfig geometry;
  InstanceOptions instance;
  BnbOptions solver;
  long rand_trials = 10000;
  Bl3Options bl3;
  std::optional<SweepSpec> sweep;

  void validate() const;
};

// Throws ConfigError with the offending field and (when known) its line.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

// Applies one sweep value to a copy of `base`.
RunConfig apply_sweep_value(const RunConfig& base, SweepParameter parameter, double value);

}  // namespace isac
