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
#include "isac/lp.hpp"
#include "isac/reform.hpp"
#include "test_support.hpp"

using namespace isac;

namespace {

MilpModel one_variable(double row_rhs, RowSense sense) {
  MilpModel m;
  m.add_variable("x", 0.0, 1.0, false, 1.0);
  m.add_row(Row{"r", {0}, {1.0}, sense, row_rhs});
  return m;
}

std::vector<int> fractional_binaries(const MilpModel& m, std::span<const double> x) {
  std::vector<int> out;
  for (int j = 0; j < m.column_count(); ++j) {
    const double v = x[static_cast<std::size_t>(j)];
    if (m.variables[static_cast<std::size_t>(j)].integral && std::abs(v - std::round(v)) > 1e-6) out.push_back(j);
  }
  return out;
}

}  // namespace

TEST_CASE("one-variable problems") {
  const LpResult bounded = solve_lp(one_variable(0.5, RowSense::kLessEqual));
  CHECK(bounded.status == LpStatus::kOptimal);
  CHECK(bounded.objective == doctest::Approx(0.5));
  CHECK(solve_lp(one_variable(2.0, RowSense::kGreaterEqual)).status == LpStatus::kInfeasible);
}

TEST_CASE("small LPs against reference optima") {
  // Reference values: tools/oracles/derive_values.py (HiGHS through scipy).
  MilpModel a;
  a.add_variable("x", 0.0, 3.0, false, 3.0);
  a.add_variable("y", 0.0, 2.0, false, 2.0);
  a.add_variable("z", -1.0, 5.0, false, 1.0);
  a.add_row(Row{"r0", {0, 1, 2}, {1, 1, 1}, RowSense::kLessEqual, 4.0});
  a.add_row(Row{"r1", {0, 1}, {1, 3}, RowSense::kLessEqual, 6.0});
  a.add_row(Row{"r2", {0, 2}, {2, 1}, RowSense::kGreaterEqual, 1.0});
  a.add_row(Row{"r3", {1, 2}, {1, -1}, RowSense::kEqual, 0.5});
  const LpResult ra = solve_lp(a);
  REQUIRE(ra.status == LpStatus::kOptimal);
  CHECK(std::abs(ra.objective - 10.75) < 1e-9);
  CHECK(std::abs(ra.primal[0] - 3.0) < 1e-9);
  CHECK(std::abs(ra.primal[1] - 0.75) < 1e-9);
  CHECK(std::abs(ra.primal[2] - 0.25) < 1e-9);

  MilpModel b;
  b.maximize = false;
  b.add_variable("x", -2.0, 2.0, false, 1.0);
  b.add_variable("y", 0.0, 3.0, false, -2.0);
  b.add_variable("z", -1.0, 4.0, false, 0.5);
  b.add_row(Row{"r0", {0, 1}, {1, 1}, RowSense::kGreaterEqual, 1.0});
  b.add_row(Row{"r1", {1, 2}, {1, 1}, RowSense::kLessEqual, 2.5});
  b.add_row(Row{"r2", {0, 2}, {1, -1}, RowSense::kGreaterEqual, -3.0});
  const LpResult rb = solve_lp(b);
  REQUIRE(rb.status == LpStatus::kOptimal);
  CHECK(std::abs(rb.objective + 8.5) < 1e-9);
  CHECK(b.max_violation(rb.primal) < 1e-9);
}

TEST_CASE("root relaxation bounds the optimum") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GeometryConfig g = test::oracle_geometry(seed);
    g.n_antennas = 2;
    g.set_user_count(1);
    InstanceOptions o;
    o.phase_bits = 1;
    const ProblemInstance inst = make_instance(g, o);
    const LpResult root = solve_lp(build_milp(inst));
    REQUIRE(root.status == LpStatus::kOptimal);
    CHECK(root.objective >= exhaustive_search(inst).f - 1e-9);
  }
}

TEST_CASE("bound changes and warm starts") {
  const ProblemInstance inst = test::oracle_instance(2);
  const MilpModel m = build_milp(inst);
  const LpResult root = solve_lp(m);
  REQUIRE(root.status == LpStatus::kOptimal);

  // An integral column fixed at its own value leaves the optimum in place.
  for (int j = 0; j < m.column_count(); ++j) {
    const double v = root.primal[static_cast<std::size_t>(j)];
    if (!m.variables[static_cast<std::size_t>(j)].integral || std::abs(v - std::round(v)) > 1e-9) continue;
    const LpResult same = tighten_bound_and_resolve(m, root, {}, BoundOverride{j, std::round(v), std::round(v)});
    CHECK(same.objective == doctest::Approx(root.objective).epsilon(1e-9));
  }

  const auto frac = fractional_binaries(m, root.primal);
  for (int j : frac) {
    for (double side : {0.0, 1.0}) {
      const LpResult child = tighten_bound_and_resolve(m, root, {}, BoundOverride{j, side, side});
      if (child.status == LpStatus::kOptimal) CHECK(child.objective <= root.objective + 1e-9);
    }
  }
}

TEST_CASE("random branchings: warm equals cold") {
  for (std::uint64_t seed : {3u, 8u}) {
    const ProblemInstance inst = test::oracle_instance(seed);
    const MilpModel m = build_milp(inst);
    std::mt19937_64 rng(seed);
    int compared = 0;
    for (int dive = 0; dive < 50; ++dive) {
      std::vector<BoundOverride> fixes;
      LpResult parent = solve_lp(m);
      for (int depth = 0; depth < 6 && parent.status == LpStatus::kOptimal; ++depth) {
        std::vector<int> frac = fractional_binaries(m, parent.primal);
        if (frac.empty()) break;
        const int j = frac[std::uniform_int_distribution<std::size_t>(0, frac.size() - 1)(rng)];
        const double side = static_cast<double>(rng() & 1u);
        const LpResult warm = tighten_bound_and_resolve(m, parent, fixes, BoundOverride{j, side, side});
        fixes.push_back(BoundOverride{j, side, side});
        const LpResult cold = solve_lp(m, fixes);
        REQUIRE(warm.status == cold.status);
        if (cold.status == LpStatus::kOptimal) {
          CHECK(std::abs(warm.objective - cold.objective) < 1e-7);
          ++compared;
        }
        parent = warm;
      }
    }
    CHECK(compared >= 50);
  }
}

TEST_CASE("cached inverse gives the same warm start") {
  const MilpModel m = build_milp(test::oracle_instance(6));
  LpEngine engine(m);
  const LpResult root = engine.solve();
  REQUIRE(root.status == LpStatus::kOptimal);
  const Basis with = engine.basis(true);
  const Basis without = engine.basis(false);
  CHECK(with.inverse != nullptr);
  CHECK(without.inverse == nullptr);

  const auto frac = fractional_binaries(m, root.primal);
  REQUIRE_FALSE(frac.empty());
  LpEngine a(m), b(m);
  a.load_basis(with);
  b.load_basis(without);
  a.set_bounds(frac[0], 0.0, 0.0);
  b.set_bounds(frac[0], 0.0, 0.0);
  const LpResult ra = a.solve();
  const LpResult rb = b.solve();
  REQUIRE(ra.status == rb.status);
  CHECK(ra.objective == doctest::Approx(rb.objective).epsilon(1e-9));
}

TEST_CASE("iteration limit is reported, never a bound") {
  LpOptions tiny;
  tiny.iteration_limit = 1;
  const LpResult r = solve_lp(build_milp(test::oracle_instance(1)), {}, nullptr, tiny);
  CHECK(r.status == LpStatus::kIterationLimit);
}
