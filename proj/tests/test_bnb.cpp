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
#include <random>

#include "doctest.h"
#include "isac/bnb.hpp"
#include "isac/reform.hpp"
#include "test_support.hpp"

using namespace isac;

TEST_CASE("generic binary program") {
  // Reference: brute force in tools/oracles/derive_values.py.
  MilpModel m;
  const double value[] = {5, 4, 3, 7, 2};
  const double weight[] = {2, 3, 1, 4, 2};
  Row cap{"cap", {}, {}, RowSense::kLessEqual, 7.0};
  Row pick{"pick", {0, 1, 3}, {1, 1, 1}, RowSense::kLessEqual, 2.0};
  for (int j = 0; j < 5; ++j) {
    m.add_variable("b" + std::to_string(j), 0.0, 1.0, true, value[j]);
    cap.index.push_back(j);
    cap.value.push_back(weight[j]);
  }
  m.add_row(cap);
  m.add_row(pick);
  const MilpResult r = branch_and_bound(m);
  REQUIRE(r.has_incumbent());
  CHECK(r.status == SolveStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(15.0));
  const std::vector<double> expected{1, 0, 1, 1, 0};
  for (int j = 0; j < 5; ++j) CHECK(r.primal[static_cast<std::size_t>(j)] == expected[static_cast<std::size_t>(j)]);
  CHECK(r.bound >= r.objective - 1e-9);
}

TEST_CASE("infeasible binary program") {
  MilpModel m;
  m.add_variable("a", 0.0, 1.0, true, 1.0);
  m.add_variable("b", 0.0, 1.0, true, 1.0);
  m.add_row(Row{"r", {0, 1}, {1, 1}, RowSense::kEqual, 1.5});
  CHECK(branch_and_bound(m).status == SolveStatus::kInfeasible);
}

TEST_CASE("hand instance against the reference enumeration") {
  // tools/oracles/derive_values.py
  const ProblemInstance inst = test::hand_instance();
  for (const Solution& s : {exhaustive_search(inst), solve(build_milp(inst), inst)}) {
    CHECK(std::abs(s.f - 1.0045) < 1e-12);
    CHECK(s.admitted == std::vector<int>{1, 0});
    CHECK(std::abs(s.tau - 0.09) < 1e-12);
  }
  CHECK(exhaustive_search(inst).phase_index == std::vector<int>{0, 1, 0});

  const ProblemInstance coupled = test::hand_instance(6.5, true);
  for (const Solution& s : {exhaustive_search(coupled), solve(build_milp(coupled), coupled)}) {
    CHECK(std::abs(s.f - 0.0225) < 1e-12);
    CHECK(s.f_com == 0.0);
  }
  const ProblemInstance easy = test::hand_instance(0.0);
  for (const Solution& s : {exhaustive_search(easy), solve(build_milp(easy), easy)}) {
    CHECK(std::abs(s.f - 2.0225) < 1e-12);
  }
  CHECK(exhaustive_search(coupled).phase_index == std::vector<int>{0, 0, 3});
}

TEST_CASE("closed-form admission matches subset enumeration") {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (bool couple : {false, true}) {
      GeometryConfig g = test::oracle_geometry(seed);
      g.set_user_count(4);
      InstanceOptions o = test::oracle_options();
      o.couple_admission = couple;
      o.snr_threshold = 60.0;
      const ProblemInstance inst = make_instance(g, o);
      for (int trial = 0; trial < 20; ++trial) {
        const cvec w = beamformer(inst.phases, test::random_tuple(rng, 3, 4));
        const AdmissionAndFloor best = optimal_mu_tau_given_w(w, inst);
        int best_count = -1;
        std::vector<int> best_mask;
        for (int mask = 0; mask < 16; ++mask) {
          std::vector<int> mu;
          bool ok = true;
          for (int u = 0; u < 4; ++u) {
            mu.push_back((mask >> u) & 1);
            if (mu.back() && snr_com(w, inst.user_snr[static_cast<std::size_t>(u)]) < inst.snr_threshold) ok = false;
          }
          if (couple && mask != 0 && mask != 15) ok = false;
          const int count = __builtin_popcount(static_cast<unsigned>(mask));
          if (ok && count > best_count) {
            best_count = count;
            best_mask = mu;
          }
        }
        CHECK(best.admitted == best_mask);
        double floor = inst.tau_max;
        for (const cmat& t : inst.target_snr) floor = std::min(floor, snr_sen(w, t));
        CHECK(best.tau == doctest::Approx(floor).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("singleton grid floor is the sensing SNR at the target") {
  GeometryConfig g = test::oracle_geometry(2);
  g.angle_uncertainty_deg = 0.0;
  const ProblemInstance inst = make_instance(g, test::oracle_options());
  REQUIRE(inst.grid_deg.size() == 1);
  const std::vector<int> idx{1, 2, 3};
  const cvec w = beamformer(inst.phases, idx);
  CHECK(optimal_mu_tau_given_w(w, inst).tau == doctest::Approx(snr_sen(w, inst.target_snr[0])));
}

TEST_CASE("branch and bound agrees with exhaustive search") {
  for (std::uint64_t seed = 101; seed <= 120; ++seed) {
    const ProblemInstance inst = test::oracle_instance(seed);
    const Solution es = exhaustive_search(inst);
    const Solution opt = solve(build_milp(inst), inst);
    CHECK(std::abs(es.f - opt.f) <= 1e-6);
    CHECK(opt.f_com == es.f_com);
    CHECK(opt.stats.status == SolveStatus::kOptimal);
    CHECK_FALSE(feasibility_violation(inst, opt).has_value());
    BnbOptions dfs;
    dfs.node_order = NodeOrder::kDepthFirst;
    CHECK(std::abs(solve(build_milp(inst), inst, dfs).f - es.f) <= 1e-6);
  }
}

TEST_CASE("node limit keeps a feasible incumbent and an honest gap") {
  GeometryConfig g;
  g.n_antennas = 5;
  InstanceOptions o;
  o.phase_bits = 2;
  const ProblemInstance inst = make_instance(g, o);
  BnbOptions limited;
  limited.node_limit = 2;
  const Solution s = solve(build_milp(inst), inst, limited);
  CHECK_FALSE(feasibility_violation(inst, s).has_value());
  const Solution best = solve(build_milp(inst), inst);
  CHECK(s.f <= best.f + 1e-9);
  if (s.stats.status == SolveStatus::kNodeLimit) CHECK(s.f + s.stats.gap >= best.f - 1e-6);
  CHECK(best.stats.gap <= 1e-6);
}

TEST_CASE("unreachable threshold keeps the sensing optimum") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GeometryConfig g = test::oracle_geometry(seed);
    InstanceOptions o = test::oracle_options();
    o.snr_threshold = 0.0;
    const ProblemInstance open = make_instance(g, o);
    o.snr_threshold = 1e12;
    const ProblemInstance closed = make_instance(g, o);
    const Solution a = solve(build_milp(open), open);
    const Solution b = solve(build_milp(closed), closed);
    CHECK(b.f_com == 0.0);
    CHECK(std::abs(a.f_sen - b.f_sen) <= 1e-6 * std::max(1.0, a.f_sen));
  }
}

TEST_CASE("exhaustive search guard and trivial sizes") {
  GeometryConfig g;
  InstanceOptions o;
  o.phase_bits = 3;
  const ProblemInstance big = make_instance(g, o);
  try {
    exhaustive_search(big);
    FAIL("expected GuardExceeded");
  } catch (const GuardExceeded& e) {
    CHECK(e.candidates() == doctest::Approx(std::pow(8.0, 10)));
  }

  g.n_antennas = 1;
  g.set_user_count(2);
  const ProblemInstance one = make_instance(g, o);
  const Solution s = exhaustive_search(one);
  CHECK(s.phase_index == std::vector<int>{0});
  CHECK(s.tau == doctest::Approx(one.tau_max).epsilon(1e-12));
  CHECK(s.stats.nodes == 8);
}

TEST_CASE("local search never loses ground") {
  std::mt19937_64 rng(23);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GeometryConfig g = test::oracle_geometry(seed);
    g.n_antennas = 5;
    const ProblemInstance inst = make_instance(g, test::oracle_options());
    Solution s = evaluate_phases(inst, test::random_tuple(rng, 5, 4));
    const double before = s.f;
    local_search(inst, s);
    CHECK(s.f >= before);
    CHECK_FALSE(feasibility_violation(inst, s).has_value());
  }
}
