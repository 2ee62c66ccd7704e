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

#include "isac/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace isac {
namespace {

using json = nlohmann::json;

std::string with_line(const std::string& field, int line, const std::string& what) {
  std::string out = "config";
  if (!field.empty()) out += " field '" + field + "'";
  if (line > 0) out += " (line " + std::to_string(line) + ")";
  return out + ": " + what;
}

int line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

// Line of the first occurrence of "key" in the document, 0 if absent.
int line_of_key(std::string_view text, const std::string& key) {
  const std::string quoted = "\"" + key + "\"";
  const std::size_t pos = text.find(quoted);
  return pos == std::string_view::npos ? 0 : line_of_offset(text, pos);
}

class Reader {
 public:
  Reader(std::string_view text, const json& root, std::string prefix = "")
      : text_(text), root_(root), prefix_(std::move(prefix)) {
    if (!root_.is_object()) fail("", "expected a JSON object");
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const std::string field = prefix_ + key;
    throw ConfigError(field, key.empty() ? 0 : line_of_key(text_, key), what);
  }

  bool has(const std::string& key) const { return root_.contains(key); }

  template <typename T>
  void read(const std::string& key, T& out) {
    seen_.insert(key);
    if (!root_.contains(key)) return;
    const json& v = root_.at(key);
    try {
      if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) fail(key, "expected true or false");
        out = v.get<bool>();
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) fail(key, "expected an integer");
        out = v.get<T>();
      } else if constexpr (std::is_floating_point_v<T>) {
        if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity")) {
          out = std::numeric_limits<T>::infinity();
        } else {
          if (!v.is_number()) fail(key, "expected a number");
          out = v.get<T>();
        }
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) fail(key, "expected a string");
        out = v.get<std::string>();
      } else {
        if (!v.is_array()) fail(key, "expected an array");
        out = v.get<T>();
      }
    } catch (const json::exception& e) {
      fail(key, e.what());
    }
  }

  template <typename T>
  void read_optional(const std::string& key, std::optional<T>& out) {
    seen_.insert(key);
    if (!root_.contains(key) || root_.at(key).is_null()) return;
    T value{};
    read(key, value);
    out = value;
  }

  Reader child(const std::string& key) {
    seen_.insert(key);
    if (!root_.at(key).is_object()) fail(key, "expected an object");
    return Reader(text_, root_.at(key), prefix_ + key + ".");
  }

  void reject_unknown() const {
    for (const auto& item : root_.items()) {
      if (!seen_.count(item.key())) fail(item.key(), "unknown key");
    }
  }

 private:
  std::string_view text_;
  const json& root_;
  std::string prefix_;
  std::set<std::string> seen_;
};

}  // namespace

ConfigError::ConfigError(std::string field, int line, const std::string& what)
    : std::runtime_error(with_line(field, line, what)), field_(std::move(field)), line_(line) {}

const char* to_string(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::kTxPower: return "tx_power_dbm";
    case SweepParameter::kSnrThreshold: return "snr_threshold";
    case SweepParameter::kAngleUncertainty: return "angle_uncertainty_deg";
    case SweepParameter::kAntennas: return "n_antennas";
    case SweepParameter::kPhaseBits: return "phase_bits";
    case SweepParameter::kDistance: return "user_distance_m";
  }
  return "unknown";
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) {
  for (SweepParameter p : {SweepParameter::kTxPower, SweepParameter::kSnrThreshold,
                           SweepParameter::kAngleUncertainty, SweepParameter::kAntennas,
                           SweepParameter::kPhaseBits, SweepParameter::kDistance}) {
    if (name == to_string(p)) return p;
  }
  return std::nullopt;
}

const char* to_string(Method method) {
  switch (method) {
    case Method::kOpt: return "opt";
    case Method::kBl2: return "bl2";
    case Method::kBl3: return "bl3";
    case Method::kRand: return "rand";
    case Method::kOracle: return "oracle";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::kOpt, Method::kBl2, Method::kBl3, Method::kRand, Method::kOracle}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep.values", 0, "value list must not be empty");
  if (methods.empty()) throw ConfigError("sweep.methods", 0, "method list must not be empty");
  if (output.empty()) throw ConfigError("sweep.output", 0, "output path must not be empty");
  for (double v : values) {
    if (!std::isfinite(v)) throw ConfigError("sweep.values", 0, "values must be finite");
    const bool integral = parameter == SweepParameter::kAntennas || parameter == SweepParameter::kPhaseBits;
    if (integral && (v != std::floor(v) || v < 1)) {
      throw ConfigError("sweep.values", 0, "values must be positive integers for " +
                                               std::string(to_string(parameter)));
    }
  }
}

void RunConfig::validate() const {
  try {
    geometry.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("", 0, e.what());
  }
  if (instance.phase_bits < 1 || instance.phase_bits > 8) {
    throw ConfigError("phase_bits", 0, "must be between 1 and 8");
  }
  if (!std::isfinite(instance.snr_threshold) || (!instance.snr_threshold_db && instance.snr_threshold < 0)) {
    throw ConfigError("snr_threshold", 0, "must be a finite nonnegative value");
  }
  if (solver.gap < 0) throw ConfigError("solver.gap", 0, "must be nonnegative");
  if (rand_trials < 1) throw ConfigError("baselines.rand_trials", 0, "must be at least 1");
  if (bl3.polygon_sides < 3) throw ConfigError("baselines.sca_polygon_sides", 0, "must be at least 3");
  if (bl3.max_iters < 1) throw ConfigError("baselines.sca_max_iters", 0, "must be at least 1");
  if (sweep) {
    sweep->validate();
    if (std::find(sweep->methods.begin(), sweep->methods.end(), Method::kOracle) != sweep->methods.end()) {
      for (double v : sweep->values) {
        const RunConfig point = apply_sweep_value(*this, sweep->parameter, v);
        const double candidates =
            std::pow(2.0, point.instance.phase_bits * static_cast<double>(point.geometry.n_antennas));
        if (candidates > 1e8) {
          throw ConfigError("sweep.methods", 0, "oracle needs " + std::to_string(candidates) +
                                                    " candidates, above the 1e8 guard");
        }
      }
    }
  }
}

RunConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("", line_of_offset(json_text, e.byte > 0 ? e.byte - 1 : 0), e.what());
  }
  RunConfig cfg;
  Reader r(json_text, root);
  GeometryConfig& g = cfg.geometry;
  int users = g.n_users;
  r.read("n_users", users);
  if (users < 0) r.fail("n_users", "must be nonnegative");
  g.set_user_count(users);
  r.read("n_antennas", g.n_antennas);
  r.read("carrier_freq_ghz", g.carrier_freq_ghz);
  r.read("tx_power_dbm", g.tx_power_dbm);
  r.read("noise_com_dbm", g.noise_com_dbm);
  r.read("noise_sen_dbm", g.noise_sen_dbm);
  r.read("user_angles_deg", g.user_angles_deg);
  r.read("user_distances_m", g.user_distances_m);
  if (r.has("user_distance_m")) {
    double d = 0.0;
    r.read("user_distance_m", d);
    std::fill(g.user_distances_m.begin(), g.user_distances_m.end(), d);
  }
  r.read("target_angle_deg", g.target_angle_deg);
  r.read("angle_uncertainty_deg", g.angle_uncertainty_deg);
  r.read("n_angle_samples", g.n_angle_samples);
  r.read("rician_factor", g.rician_factor);
  r.read("radar_cross_section", g.radar_cross_section);
  r.read("target_distance_m", g.target_distance_m);
  r.read("seed", g.seed);

  InstanceOptions& o = cfg.instance;
  r.read("phase_bits", o.phase_bits);
  r.read("phases_deg", o.phases_deg);
  r.read("snr_threshold", o.snr_threshold);
  r.read("snr_threshold_db", o.snr_threshold_db);
  r.read("couple_admission", o.couple_admission);
  r.read_optional("rho_com", o.rho_com);
  r.read_optional("rho_sen", o.rho_sen);

  if (r.has("solver")) {
    Reader s = r.child("solver");
    s.read("gap", cfg.solver.gap);
    s.read("node_limit", cfg.solver.node_limit);
    s.read("time_limit_s", cfg.solver.time_limit_s);
    s.read("symmetry_break", cfg.solver.symmetry_break);
    s.read("local_search", cfg.solver.local_search);
    std::string order = "best_bound";
    s.read("node_order", order);
    if (order == "best_bound") {
      cfg.solver.node_order = NodeOrder::kBestBound;
    } else if (order == "depth_first") {
      cfg.solver.node_order = NodeOrder::kDepthFirst;
    } else {
      s.fail("node_order", "expected \"best_bound\" or \"depth_first\"");
    }
    s.reject_unknown();
  }
  if (r.has("baselines")) {
    Reader b = r.child("baselines");
    b.read("rand_trials", cfg.rand_trials);
    b.read("sca_max_iters", cfg.bl3.max_iters);
    b.read("sca_tol", cfg.bl3.tol);
    b.read("sca_trials", cfg.bl3.trials);
    b.read("sca_polygon_sides", cfg.bl3.polygon_sides);
    b.reject_unknown();
  }
  if (r.has("sweep")) {
    Reader s = r.child("sweep");
    SweepSpec spec;
    std::string parameter;
    s.read("parameter", parameter);
    auto p = parse_sweep_parameter(parameter);
    if (!p) s.fail("parameter", "unknown sweep parameter '" + parameter + "'");
    spec.parameter = *p;
    s.read("values", spec.values);
    std::vector<std::string> methods;
    s.read("methods", methods);
    if (!methods.empty()) {
      spec.methods.clear();
      for (const std::string& m : methods) {
        auto parsed = parse_method(m);
        if (!parsed) s.fail("methods", "unknown method '" + m + "'");
        spec.methods.push_back(*parsed);
      }
    }
    s.read("output", spec.output);
    s.read("fixed_channels", spec.fixed_channels);
    s.reject_unknown();
    cfg.sweep = std::move(spec);
  }
  r.reject_unknown();

  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    if (e.line() == 0 && !e.field().empty()) {
      const std::string leaf = e.field().substr(e.field().rfind('.') + 1);
      throw ConfigError(e.field(), line_of_key(json_text, leaf), std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
    }
    throw;
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

RunConfig apply_sweep_value(const RunConfig& base, SweepParameter parameter, double value) {
  RunConfig cfg = base;
  switch (parameter) {
    case SweepParameter::kTxPower: cfg.geometry.tx_power_dbm = value; break;
    case SweepParameter::kSnrThreshold: cfg.instance.snr_threshold = value; break;
    case SweepParameter::kAngleUncertainty: cfg.geometry.angle_uncertainty_deg = value; break;
    case SweepParameter::kAntennas: cfg.geometry.n_antennas = static_cast<int>(value); break;
    case SweepParameter::kPhaseBits: cfg.instance.phase_bits = static_cast<int>(value); break;
    case SweepParameter::kDistance:
      std::fill(cfg.geometry.user_distances_m.begin(), cfg.geometry.user_distances_m.end(), value);
      break;
  }
  return cfg;
}

}  // namespace isac
