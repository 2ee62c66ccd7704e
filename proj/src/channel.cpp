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

#include "isac/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace isac {
namespace {

double deg_to_rad(double deg) { return deg * kPi / 180.0; }

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw std::invalid_argument(field + ": " + what);
}

}  // namespace

void GeometryConfig::set_user_count(int users) {
  n_users = users;
  if (users < 0) return;
  const auto u = static_cast<std::size_t>(users);
  while (user_angles_deg.size() < u) {
    user_angles_deg.push_back(30.0 + 10.0 * static_cast<double>(user_angles_deg.size()));
  }
  user_angles_deg.resize(u);
  user_distances_m.resize(u, 40.0);
}

void GeometryConfig::validate() const {
  require(n_antennas >= 1, "n_antennas", "must be >= 1");
  require(n_users >= 0, "n_users", "must be >= 0");
  require(n_angle_samples >= 1, "n_angle_samples", "must be >= 1");
  require(carrier_freq_ghz > 0.0, "carrier_freq_ghz", "must be > 0");
  require(rician_factor >= 0.0, "rician_factor", "must be >= 0");
  require(radar_cross_section > 0.0, "radar_cross_section", "must be > 0");
  require(target_distance_m > 0.0, "target_distance_m", "must be > 0");
  require(angle_uncertainty_deg >= 0.0, "angle_uncertainty_deg", "must be >= 0");
  require(std::isfinite(tx_power_dbm), "tx_power_dbm", "must be finite");
  require(std::isfinite(noise_com_dbm), "noise_com_dbm", "must be finite");
  require(std::isfinite(noise_sen_dbm), "noise_sen_dbm", "must be finite");
  require(user_angles_deg.size() == static_cast<std::size_t>(n_users),
          "user_angles_deg", "length must equal n_users");
  require(user_distances_m.size() == static_cast<std::size_t>(n_users),
          "user_distances_m", "length must equal n_users");
  for (double d : user_distances_m) {
    require(d > 0.0, "user_distances_m", "entries must be > 0");
  }
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

cvec steering_vector(double theta_deg, int n_antennas) {
  const double c = std::cos(deg_to_rad(theta_deg));
  cvec a(n_antennas);
  for (int n = 1; n <= n_antennas; ++n) {
    const double half_offset = 0.5 * static_cast<double>(2 * n - n_antennas - 1);
    a(n - 1) = std::polar(1.0, kPi * half_offset * c);
  }
  return a;
}

double uma_pathloss_db(double distance_m, double carrier_freq_ghz) {
  if (!(distance_m > 0.0) || !(carrier_freq_ghz > 0.0)) {
    throw std::invalid_argument("uma_pathloss_db: distance and frequency must be positive");
  }
  return 28.0 + 22.0 * std::log10(distance_m) + 20.0 * std::log10(carrier_freq_ghz);
}

double reflection_coefficient(double carrier_freq_ghz, double rcs_m2,
                              double target_distance_m) {
  if (!(carrier_freq_ghz > 0.0) || !(rcs_m2 > 0.0) || !(target_distance_m > 0.0)) {
    throw std::invalid_argument("reflection_coefficient: inputs must be positive");
  }
  const double lambda = kSpeedOfLight / (carrier_freq_ghz * 1e9);
  const double d2 = target_distance_m * target_distance_m;
  return lambda * lambda * rcs_m2 / (64.0 * kPi * kPi * kPi * d2 * d2);
}

std::mt19937_64 user_stream(std::uint64_t seed, int user) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(user)};
  return std::mt19937_64(seq);
}

cvec rician_channel(const GeometryConfig& config, int user, std::mt19937_64& rng) {
  const int n = config.n_antennas;
  const auto u = static_cast<std::size_t>(user);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  cvec nlos(n);
  for (int i = 0; i < n; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    nlos(i) = cplx(re, im);
  }
  const double k = config.rician_factor;
  double los_weight = 1.0;
  double nlos_weight = 0.0;
  if (std::isfinite(k)) {
    los_weight = std::sqrt(k / (k + 1.0));
    nlos_weight = std::sqrt(1.0 / (k + 1.0));
  }
  const double gamma_db = uma_pathloss_db(config.user_distances_m[u], config.carrier_freq_ghz);
  const double amplitude = std::pow(10.0, -gamma_db / 20.0);
  const cvec los = steering_vector(config.user_angles_deg[u], n);
  return amplitude * (los_weight * los + nlos_weight * nlos);
}

std::vector<double> angle_grid(double theta_deg, double delta_deg, int n_samples) {
  if (n_samples <= 1 || delta_deg == 0.0) return {theta_deg};
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n_samples));
  const double step = 2.0 * delta_deg / static_cast<double>(n_samples - 1);
  for (int c = 0; c < n_samples; ++c) {
    grid.push_back(theta_deg - delta_deg + step * static_cast<double>(c));
  }
  // Pin the endpoints against rounding in the step accumulation.
  grid.front() = theta_deg - delta_deg;
  grid.back() = theta_deg + delta_deg;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

cmat target_snr_matrix(double angle_deg, double alpha, double noise_sen_mw,
                       int n_antennas) {
  const cvec a = steering_vector(angle_deg, n_antennas);
  return (alpha / noise_sen_mw) * (a * a.adjoint());
}

ChannelSet generate_channels(const GeometryConfig& config) {
  config.validate();
  ChannelSet set;
  set.alpha = reflection_coefficient(config.carrier_freq_ghz, config.radar_cross_section,
                                     config.target_distance_m);
  for (int u = 0; u < config.n_users; ++u) {
    auto rng = user_stream(config.seed, u);
    set.user_channels.push_back(rician_channel(config, u, rng));
    set.pathloss_db.push_back(uma_pathloss_db(config.user_distances_m[static_cast<std::size_t>(u)],
                                              config.carrier_freq_ghz));
  }
  set.grid_deg = angle_grid(config.target_angle_deg, config.angle_uncertainty_deg,
                            config.n_angle_samples);
  const double noise_sen = dbm_to_mw(config.noise_sen_dbm);
  for (double angle : set.grid_deg) {
    set.target_matrices.push_back(
        target_snr_matrix(angle, set.alpha, noise_sen, config.n_antennas));
  }
  return set;
}

}  // namespace isac
