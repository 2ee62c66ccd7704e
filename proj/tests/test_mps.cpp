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

#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "isac/mps.hpp"
#include "isac/reform.hpp"
#include "test_support.hpp"

using namespace isac;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void check_same_model(const MilpModel& a, const MilpModel& b) {
  REQUIRE(a.column_count() == b.column_count());
  REQUIRE(a.row_count() == b.row_count());
  CHECK(a.maximize == b.maximize);
  for (int j = 0; j < a.column_count(); ++j) {
    const Variable& va = a.variables[static_cast<std::size_t>(j)];
    const Variable& vb = b.variables[static_cast<std::size_t>(j)];
    CHECK(va.name == vb.name);
    CHECK(va.integral == vb.integral);
    CHECK(va.lower == vb.lower);
    CHECK(va.upper == vb.upper);
    CHECK(std::abs(a.objective[static_cast<std::size_t>(j)] - b.objective[static_cast<std::size_t>(j)]) <= 1e-15);
  }
  for (int i = 0; i < a.row_count(); ++i) {
    const Row& ra = a.rows[static_cast<std::size_t>(i)];
    const Row& rb = b.rows[static_cast<std::size_t>(i)];
    CHECK(ra.name == rb.name);
    CHECK(ra.sense == rb.sense);
    CHECK(std::abs(ra.rhs - rb.rhs) <= 1e-15 * std::max(1.0, std::abs(ra.rhs)));
    // Rows are compared as sparse maps; the reader collects them column by column.
    std::map<int, double> ea, eb;
    for (std::size_t k = 0; k < ra.index.size(); ++k) ea[ra.index[k]] += ra.value[k];
    for (std::size_t k = 0; k < rb.index.size(); ++k) eb[rb.index[k]] += rb.value[k];
    REQUIRE(ea.size() == eb.size());
    for (auto ia = ea.begin(), ib = eb.begin(); ia != ea.end(); ++ia, ++ib) {
      CHECK(ia->first == ib->first);
      CHECK(std::abs(ia->second - ib->second) <= 1e-15 * std::max(1.0, std::abs(ia->second)));
    }
  }
}

}  // namespace

TEST_CASE("toy model matches the golden file byte for byte") {
  CHECK(export_mps(test::toy_model()) == read_file(std::string(ISAC_TEST_DATA) + "/toy.mps"));
}

TEST_CASE("toy model round trip") {
  const MilpModel back = parse_mps(export_mps(test::toy_model()));
  check_same_model(test::toy_model(), back);
  CHECK(back.name == "toy");
}

TEST_CASE("phase-selection models round trip") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    InstanceOptions o = test::oracle_options();
    o.couple_admission = seed % 2 == 0;
    const MilpModel m = build_milp(make_instance(test::oracle_geometry(seed), o));
    const std::string text = export_mps(m);
    const MilpModel back = parse_mps(text);
    check_same_model(m, back);
    CHECK(export_mps(back) == text);
  }
}

TEST_CASE("export is deterministic") {
  const MilpModel m = build_milp(test::oracle_instance(9));
  CHECK(export_mps(m) == export_mps(build_milp(test::oracle_instance(9))));
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_mps("NAME x\nROWS\n N obj\n Q r0\nENDATA\n"), MpsParseError);
  CHECK_THROWS_AS(parse_mps("NAME x\nROWS\n N obj\nCOLUMNS\n    a missing 1\nENDATA\n"), MpsParseError);
}

TEST_CASE("parser accepts two-pair lines and free bounds") {
  const std::string text =
      "NAME two\n"
      "ROWS\n N obj\n L r0\n G r1\n"
      "COLUMNS\n    a obj 1 r0 2\n    a r1 1\n    b obj -1 r0 1\n"
      "RHS\n    RHS r0 4 r1 -1\n"
      "BOUNDS\n FR BND a\n MI BND b\n UP BND b 3\nENDATA\n";
  const MilpModel m = parse_mps(text);
  REQUIRE(m.column_count() == 2);
  CHECK(m.maximize == false);
  CHECK(m.rows[0].rhs == 4.0);
  CHECK(m.rows[1].rhs == -1.0);
  CHECK(std::isinf(m.variables[0].lower));
  CHECK(std::isinf(m.variables[0].upper));
  CHECK(std::isinf(m.variables[1].lower));
  CHECK(m.variables[1].upper == 3.0);
}
