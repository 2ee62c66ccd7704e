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

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace isac {

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;
  bool integral = false;
  // Fractional integer columns with a higher priority are branched on first.
  int branch_priority = 0;
};

struct Row {
  std::string name;
  std::vector<int> index;
  std::vector<double> value;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

// Column map of the phase-selection MILP. Antennas n < m index pairs in
// lexicographic order; y(n, m, r, c) pairs row r of x_n with column c of x_m.
struct VariableLayout {
  int antennas = 0;
  int phases = 0;
  int users = 0;
  bool uniform_alphabet = false;

  int x(int n, int l) const { return n * phases + l; }
  int pair(int n, int m) const { return n * antennas - n * (n + 1) / 2 + (m - n - 1); }
  int pair_count() const { return antennas * (antennas - 1) / 2; }
  int y(int n, int m, int r, int c) const {
    return antennas * phases + (pair(n, m) * phases + r) * phases + c;
  }
  int mu(int u) const { return antennas * phases + pair_count() * phases * phases + u; }
  int tau() const { return mu(users); }
  int column_count() const { return tau() + 1; }
};

struct MilpModel {
  std::string name = "model";
  bool maximize = true;
  std::vector<Variable> variables;
  std::vector<double> objective;
  std::vector<Row> rows;
  std::optional<VariableLayout> layout;

  int add_variable(std::string name, double lower, double upper, bool integral,
                   double cost = 0.0, int branch_priority = 0);
  int add_row(Row row);

  int column_count() const { return static_cast<int>(variables.size()); }
  int row_count() const { return static_cast<int>(rows.size()); }
  long nonzero_count() const;

  double row_activity(int row, std::span<const double> primal) const;
  double objective_value(std::span<const double> primal) const;

  // Largest absolute violation of bounds and rows by `primal`.
  double max_violation(std::span<const double> primal) const;
  // Largest distance of an integral column from the nearest integer.
  double max_integrality_violation(std::span<const double> primal) const;
};

}  // namespace isac
