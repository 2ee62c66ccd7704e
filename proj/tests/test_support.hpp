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

// Fixtures shared by the unit tests.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "isac/channel.hpp"
#include "isac/instance.hpp"
#include "isac/milp_model.hpp"

namespace isac::test {

// Three antennas, four phases of unit modulus, two users with fixed
// channels, targets at 100 and 120 degrees scaled by 0.3. Reference optima
// come from tools/oracles/derive_values.py.
inline ProblemInstance hand_instance(double gamma = 6.5, bool couple = false) {
  ProblemInstance inst;
  inst.n_antennas = 3;
  inst.n_users = 2;
  const cvec g0 = (cvec(3) << cplx(1, 0.5), cplx(-0.3, 0.8), cplx(0.7, -0.2)).finished();
  const cvec g1 = (cvec(3) << cplx(0.2, -1), cplx(0.9, 0.1), cplx(-0.4, -0.6)).finished();
  for (const cvec& g : {g0, g1}) {
    inst.user_factor.push_back(g);
    inst.user_snr.push_back(g * g.adjoint());
  }
  for (double angle : {100.0, 120.0}) {
    const cvec t = 0.3 * steering_vector(angle, 3);
    inst.target_factor.push_back(t);
    inst.target_snr.push_back(t * t.adjoint());
    inst.grid_deg.push_back(angle);
  }
  inst.snr_threshold = gamma;
  inst.rho_com = 1.0;
  inst.rho_sen = 0.05;
  inst.phases = PhaseSet::uniform(2, 1.0);
  inst.tau_max = 0.09 * 9.0;
  inst.couple_admission = couple;
  inst.alpha = 0.09;
  inst.noise_sen_mw = 1.0;
  inst.tx_power_mw = 3.0;
  inst.validate();
  return inst;
}

// Geometry of the oracle suite: N=3, Q=2, U=2 and a 3-point grid over +-4
// degrees, physics defaults otherwise.
inline GeometryConfig oracle_geometry(std::uint64_t seed) {
  GeometryConfig g;
  g.n_antennas = 3;
  g.set_user_count(2);
  g.angle_uncertainty_deg = 4.0;
  g.n_angle_samples = 3;
  g.seed = seed;
  return g;
}

inline InstanceOptions oracle_options() {
  InstanceOptions o;
  o.phase_bits = 2;
  return o;
}

inline ProblemInstance oracle_instance(std::uint64_t seed) {
  return make_instance(oracle_geometry(seed), oracle_options());
}

// max 3 x0 + 2 x1, x0 binary, 0 <= x1 <= 4,
// c0: x0 + x1 <= 3.5, c1: x0 - x1 >= -3.
inline MilpModel toy_model() {
  MilpModel m;
  m.name = "toy";
  m.maximize = true;
  m.add_variable("x0", 0.0, 1.0, true, 3.0, 1);
  m.add_variable("x1", 0.0, 4.0, false, 2.0);
  m.add_row(Row{"c0", {0, 1}, {1.0, 1.0}, RowSense::kLessEqual, 3.5});
  m.add_row(Row{"c1", {0, 1}, {1.0, -1.0}, RowSense::kGreaterEqual, -3.0});
  return m;
}

// Random unit-modulus phase tuple.
inline std::vector<int> random_tuple(std::mt19937_64& rng, int antennas, int phases) {
  std::uniform_int_distribution<int> pick(0, phases - 1);
  std::vector<int> idx(static_cast<std::size_t>(antennas));
  for (int& p : idx) p = pick(rng);
  return idx;
}

}  // namespace isac::test
