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

#include <cmath>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "isac/channel.hpp"

using namespace isac;

TEST_CASE("steering vector special angles") {
  const cvec one = steering_vector(120.0, 1);
  REQUIRE(one.size() == 1);
  CHECK(std::abs(one(0) - cplx(1, 0)) < 1e-15);

  const cvec broadside = steering_vector(90.0, 5);
  for (int n = 0; n < 5; ++n) CHECK(std::abs(broadside(n) - cplx(1, 0)) < 1e-15);

  const cvec two = steering_vector(60.0, 2);
  CHECK(std::abs(two(0) - std::polar(1.0, -kPi / 4)) < 1e-15);
  CHECK(std::abs(two(1) - std::polar(1.0, kPi / 4)) < 1e-15);
}

TEST_CASE("steering vector has unit-modulus entries") {
  for (double theta = 0.0; theta <= 180.0; theta += 7.5) {
    const cvec a = steering_vector(theta, 8);
    for (int n = 0; n < 8; ++n) CHECK(std::abs(std::abs(a(n)) - 1.0) < 1e-14);
  }
}

TEST_CASE("power conversions") {
  CHECK(dbm_to_mw(0.0) == doctest::Approx(1.0));
  CHECK(dbm_to_mw(30.0) == doctest::Approx(1000.0));
  CHECK(mw_to_dbm(dbm_to_mw(-84.0)) == doctest::Approx(-84.0));
}

TEST_CASE("urban macro path loss") {
  CHECK(uma_pathloss_db(1.0, 1.0) == doctest::Approx(28.0).epsilon(1e-15));
  // tools/oracles/derive_values.py
  CHECK(std::abs(uma_pathloss_db(40.0, 71.0) - 100.270486783597) < 1e-9);
  CHECK(std::abs(uma_pathloss_db(10.0, 71.0) - 87.025166974382) < 1e-9);
  CHECK_THROWS_AS(uma_pathloss_db(0.0, 71.0), std::invalid_argument);
}

TEST_CASE("reflection coefficient") {
  const double a = reflection_coefficient(71.0, 1.0, 20.0);
  CHECK(std::abs(a - 5.615328058755e-14) < 1e-24);
  CHECK(reflection_coefficient(71.0, 1.0, 40.0) == doctest::Approx(a / 16.0).epsilon(1e-14));
  CHECK(reflection_coefficient(71.0, 2.0, 20.0) == doctest::Approx(2.0 * a).epsilon(1e-14));
}

TEST_CASE("angle grid") {
  CHECK(angle_grid(120.0, 0.0, 33) == std::vector<double>{120.0});
  CHECK(angle_grid(120.0, 8.0, 3) == std::vector<double>{112.0, 120.0, 128.0});
  CHECK(angle_grid(120.0, 8.0, 1) == std::vector<double>{120.0});
  const auto fine = angle_grid(120.0, 8.0, 33);
  REQUIRE(fine.size() == 33);
  CHECK(fine.front() == 112.0);
  CHECK(fine.back() == 128.0);
  CHECK(fine[16] == doctest::Approx(120.0));
}

TEST_CASE("target matrix") {
  const cmat scalar = target_snr_matrix(120.0, 2e-3, 4e-3, 1);
  CHECK(scalar(0, 0).real() == doctest::Approx(0.5));

  GeometryConfig g;
  const double alpha = reflection_coefficient(g.carrier_freq_ghz, g.radar_cross_section, g.target_distance_m);
  const double noise = dbm_to_mw(g.noise_sen_dbm);
  const cmat m = target_snr_matrix(g.target_angle_deg, alpha, noise, g.n_antennas);
  CHECK(m.trace().real() == doctest::Approx(alpha * g.n_antennas / noise).epsilon(1e-12));

  const cmat small = target_snr_matrix(75.0, 1.0, 1.0, 4);
  Eigen::SelfAdjointEigenSolver<cmat> eig(small);
  const auto& ev = eig.eigenvalues();
  CHECK(ev(3) == doctest::Approx(4.0).epsilon(1e-12));
  for (int i = 0; i < 3; ++i) CHECK(std::abs(ev(i)) < 1e-9);
}

TEST_CASE("line-of-sight limit of the Rician channel") {
  GeometryConfig g;
  g.n_antennas = 4;
  g.rician_factor = std::numeric_limits<double>::infinity();
  for (int u = 0; u < g.n_users; ++u) {
    auto rng = user_stream(g.seed, u);
    const cvec h = rician_channel(g, u, rng);
    const double scale = std::pow(10.0, -uma_pathloss_db(g.user_distances_m[u], g.carrier_freq_ghz) / 20.0);
    const cvec expected = scale * steering_vector(g.user_angles_deg[u], g.n_antennas);
    CHECK((h - expected).norm() < 1e-12 * expected.norm());
  }
}

TEST_CASE("small-scale fading is normalized to N") {
  // h / 10^(-PL/20) = sqrt(K/(K+1)) a + sqrt(1/(K+1)) v, so E||h||^2 scaled back is N.
  GeometryConfig g;
  g.n_antennas = 4;
  g.set_user_count(1);
  const double scale = std::pow(10.0, -uma_pathloss_db(g.user_distances_m[0], g.carrier_freq_ghz) / 20.0);
  auto rng = user_stream(7, 0);
  double total = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) total += (rician_channel(g, 0, rng) / scale).squaredNorm();
  CHECK(total / draws == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("channel generation is deterministic per seed") {
  GeometryConfig g;
  g.n_antennas = 6;
  const ChannelSet a = generate_channels(g);
  const ChannelSet b = generate_channels(g);
  REQUIRE(a.user_channels.size() == 5);
  for (std::size_t u = 0; u < a.user_channels.size(); ++u) CHECK(a.user_channels[u] == b.user_channels[u]);
  g.seed = 2;
  const ChannelSet c = generate_channels(g);
  CHECK(a.user_channels[0] != c.user_channels[0]);
  // Transmit power does not enter the channel draw.
  g.seed = 1;
  g.tx_power_dbm = 20.0;
  CHECK(generate_channels(g).user_channels[3] == a.user_channels[3]);
}

TEST_CASE("geometry validation names the field") {
  GeometryConfig g;
  g.n_antennas = 0;
  CHECK_THROWS_WITH_AS(g.validate(), doctest::Contains("n_antennas"), std::invalid_argument);
  GeometryConfig h;
  h.user_angles_deg.pop_back();
  CHECK_THROWS_AS(h.validate(), std::invalid_argument);
  GeometryConfig k;
  k.set_user_count(7);
  CHECK(k.user_angles_deg.size() == 7);
  CHECK(k.user_angles_deg[6] == 90.0);
  CHECK(k.user_distances_m[6] == 40.0);
}
