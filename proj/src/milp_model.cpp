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

#include "isac/milp_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isac {

int MilpModel::add_variable(std::string var_name, double lower, double upper, bool integral,
                            double cost, int branch_priority) {
  if (lower > upper) throw std::invalid_argument("variable " + var_name + ": lower > upper");
  variables.push_back({std::move(var_name), lower, upper, integral, branch_priority});
  objective.push_back(cost);
  return column_count() - 1;
}

int MilpModel::add_row(Row row) {
  if (row.index.size() != row.value.size()) {
    throw std::invalid_argument("row " + row.name + ": index/value length mismatch");
  }
  for (int j : row.index) {
    if (j < 0 || j >= column_count()) throw std::out_of_range("row " + row.name + ": bad column");
  }
  rows.push_back(std::move(row));
  return row_count() - 1;
}

long MilpModel::nonzero_count() const {
  long total = 0;
  for (const Row& row : rows) total += static_cast<long>(row.index.size());
  return total;
}

double MilpModel::row_activity(int row, std::span<const double> primal) const {
  const Row& r = rows[static_cast<std::size_t>(row)];
  double sum = 0.0;
  for (std::size_t k = 0; k < r.index.size(); ++k) {
    sum += r.value[k] * primal[static_cast<std::size_t>(r.index[k])];
  }
  return sum;
}

double MilpModel::objective_value(std::span<const double> primal) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < objective.size(); ++j) sum += objective[j] * primal[j];
  return sum;
}

double MilpModel::max_violation(std::span<const double> primal) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < variables.size(); ++j) {
    worst = std::max(worst, variables[j].lower - primal[j]);
    worst = std::max(worst, primal[j] - variables[j].upper);
  }
  for (int i = 0; i < row_count(); ++i) {
    const Row& r = rows[static_cast<std::size_t>(i)];
    const double activity = row_activity(i, primal);
    switch (r.sense) {
      case RowSense::kLessEqual: worst = std::max(worst, activity - r.rhs); break;
      case RowSense::kGreaterEqual: worst = std::max(worst, r.rhs - activity); break;
      case RowSense::kEqual: worst = std::max(worst, std::abs(activity - r.rhs)); break;
    }
  }
  return worst;
}

double MilpModel::max_integrality_violation(std::span<const double> primal) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < variables.size(); ++j) {
    if (!variables[j].integral) continue;
    worst = std::max(worst, std::abs(primal[j] - std::round(primal[j])));
  }
  return worst;
}

}  // namespace isac
