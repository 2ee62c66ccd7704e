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

// Physical-layer data for the multicast ISAC model: half-wavelength ULA
// steering vectors, Rician user channels with UMa path loss, the monostatic
// target response and the angular uncertainty grid.
//
// Units: angles in degrees at the interface (radians only inside the trig
// calls), powers in dBm at the interface and milliwatts internally, channel
// amplitudes carry 10^(-pathloss/20) so every SNR is a plain ratio of
// milliwatts.

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace isac {

using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

struct GeometryConfig {
  int n_antennas = 10;
  int n_users = 5;
  double carrier_freq_ghz = 71.0;
  double tx_power_dbm = 36.0;
  double noise_com_dbm = -84.0;
  double noise_sen_dbm = -84.0;
  std::vector<double> user_angles_deg{30.0, 40.0, 50.0, 60.0, 70.0};
  std::vector<double> user_distances_m{40.0, 40.0, 40.0, 40.0, 40.0};
  double target_angle_deg = 120.0;
  double angle_uncertainty_deg = 0.0;
  int n_angle_samples = 33;
  // Linear ratio; +infinity selects the pure line-of-sight channel.
  double rician_factor = 10.0;
  double radar_cross_section = 1.0;  // m^2
  double target_distance_m = 20.0;
  std::uint64_t seed = 1;

  // Resizes the per-user vectors to `users`, filling new entries with the
  // default pattern (angles 30 + 10u degrees, distance 40 m).
  void set_user_count(int users);

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

// Entries exp(j*pi*((2n - N - 1)/2)*cos(theta)), n = 1..N.
cvec steering_vector(double theta_deg, int n_antennas);

// UMa large-scale loss 28 + 22 log10(d) + 20 log10(fc) in dB, fc in GHz.
double uma_pathloss_db(double distance_m, double carrier_freq_ghz);

// Radar reflection coefficient lambda^2 R / (64 pi^3 d^4).
double reflection_coefficient(double carrier_freq_ghz, double rcs_m2,
                              double target_distance_m);

// Independent NLoS stream for one user. Streams are keyed by (seed, user) so
// adding users never reshuffles the draws of earlier ones.
std::mt19937_64 user_stream(std::uint64_t seed, int user);

// h_u = 10^(-gamma_u/20) * (sqrt(K/(K+1)) a(beta_u) + sqrt(1/(K+1)) v),
// v ~ CN(0, I). Always consumes N complex draws from `rng`.
cvec rician_channel(const GeometryConfig& config, int user,
                    std::mt19937_64& rng);

// Sorted, de-duplicated samples theta - delta + 2 delta c / (C - 1).
std::vector<double> angle_grid(double theta_deg, double delta_deg,
                               int n_samples);

// G~(theta) = alpha a(theta) a(theta)^H / sigma_sen^2 (noise in mW).
cmat target_snr_matrix(double angle_deg, double alpha, double noise_sen_mw,
                       int n_antennas);

struct ChannelSet {
  std::vector<cvec> user_channels;
  std::vector<cmat> target_matrices;  // one per grid angle
  std::vector<double> grid_deg;
  double alpha = 0.0;
  std::vector<double> pathloss_db;
};

// Pure function of the config (including its seed).
ChannelSet generate_channels(const GeometryConfig& config);

}  // namespace isac
