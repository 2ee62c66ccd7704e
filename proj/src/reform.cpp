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

#include "isac/reform.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace isac {
namespace {

std::string join(const char* prefix, std::initializer_list<int> ids) {
  std::string out = prefix;
  for (int id : ids) {
    out += '_';
    out += std::to_string(id);
  }
  return out;
}

// delta^2 * sum_n Re M_nn, the contribution of the constant diagonal of W.
double diagonal_constant(const cmat& matrix, const PhaseSet& phases) {
  const double d2 = phases.magnitude() * phases.magnitude();
  return d2 * matrix.diagonal().real().sum();
}

Row quadratic_row(std::string name, const cmat& matrix, const VariableLayout& layout,
                  const PhaseSet& phases, int extra_column, double extra_coefficient) {
  Row row;
  row.name = std::move(name);
  row.sense = RowSense::kGreaterEqual;
  for (int n = 0; n < layout.antennas; ++n) {
    for (int m = n + 1; m < layout.antennas; ++m) {
      for (int r = 0; r < layout.phases; ++r) {
        for (int c = 0; c < layout.phases; ++c) {
          const double coef = lifted_coefficient(matrix, phases, n, m, r, c);
          if (coef == 0.0) continue;
          row.index.push_back(layout.y(n, m, r, c));
          row.value.push_back(coef);
        }
      }
    }
  }
  row.index.push_back(extra_column);
  row.value.push_back(extra_coefficient);
  row.rhs = -diagonal_constant(matrix, phases);
  return row;
}

}  // namespace

double lifted_coefficient(const cmat& matrix, const PhaseSet& phases, int n, int m, int r, int c) {
  return 2.0 * (std::conj(phases[r]) * matrix(n, m) * phases[c]).real();
}

MilpModel build_milp(const ProblemInstance& instance) {
  instance.validate();
  const PhaseSet& phases = instance.phases;
  VariableLayout layout;
  layout.antennas = instance.n_antennas;
  layout.phases = phases.size();
  layout.users = instance.n_users;
  layout.uniform_alphabet = phases.is_uniform();

  MilpModel model;
  model.name = "isac";
  model.maximize = true;
  for (int n = 0; n < layout.antennas; ++n) {
    for (int l = 0; l < layout.phases; ++l) {
      model.add_variable(join("x", {n, l}), 0.0, 1.0, true, 0.0, 1);
    }
  }
  for (int n = 0; n < layout.antennas; ++n) {
    for (int m = n + 1; m < layout.antennas; ++m) {
      for (int r = 0; r < layout.phases; ++r) {
        for (int c = 0; c < layout.phases; ++c) {
          model.add_variable(join("y", {n, m, r, c}), 0.0, 1.0, false);
        }
      }
    }
  }
  for (int u = 0; u < layout.users; ++u) {
    model.add_variable(join("mu", {u}), 0.0, 1.0, true, instance.rho_com, 0);
  }
  model.add_variable("tau", 0.0, instance.tau_max, false, instance.rho_sen);

  for (int n = 0; n < layout.antennas; ++n) {
    Row row{join("D2", {n}), {}, {}, RowSense::kEqual, 1.0};
    for (int l = 0; l < layout.phases; ++l) {
      row.index.push_back(layout.x(n, l));
      row.value.push_back(1.0);
    }
    model.add_row(std::move(row));
  }
  for (int n = 0; n < layout.antennas; ++n) {
    for (int m = n + 1; m < layout.antennas; ++m) {
      for (int c = 0; c < layout.phases; ++c) {
        Row row{join("H1", {n, m, c}), {}, {}, RowSense::kEqual, 0.0};
        for (int r = 0; r < layout.phases; ++r) {
          row.index.push_back(layout.y(n, m, r, c));
          row.value.push_back(1.0);
        }
        row.index.push_back(layout.x(m, c));
        row.value.push_back(-1.0);
        model.add_row(std::move(row));
      }
    }
  }
  for (int n = 0; n < layout.antennas; ++n) {
    for (int m = n + 1; m < layout.antennas; ++m) {
      for (int r = 0; r < layout.phases; ++r) {
        Row row{join("H2", {n, m, r}), {}, {}, RowSense::kEqual, 0.0};
        for (int c = 0; c < layout.phases; ++c) {
          row.index.push_back(layout.y(n, m, r, c));
          row.value.push_back(1.0);
        }
        row.index.push_back(layout.x(n, r));
        row.value.push_back(-1.0);
        model.add_row(std::move(row));
      }
    }
  }
  for (int u = 0; u < layout.users; ++u) {
    model.add_row(quadratic_row(join("C3", {u}), instance.user_snr[static_cast<std::size_t>(u)],
                                layout, phases, layout.mu(u), -instance.snr_threshold));
  }
  for (std::size_t k = 0; k < instance.target_snr.size(); ++k) {
    model.add_row(quadratic_row(join("C5", {static_cast<int>(k)}), instance.target_snr[k], layout,
                                phases, layout.tau(), -1.0));
  }
  if (instance.couple_admission) {
    for (int u = 0; u + 1 < layout.users; ++u) {
      model.add_row({join("CPL", {u}), {layout.mu(u), layout.mu(u + 1)}, {1.0, -1.0},
                     RowSense::kEqual, 0.0});
    }
  }

  for (const Row& row : model.rows) {
    for (double v : row.value) {
      if (!std::isfinite(v)) throw std::overflow_error("row " + row.name + ": non-finite coefficient");
    }
    if (!std::isfinite(row.rhs)) throw std::overflow_error("row " + row.name + ": non-finite rhs");
  }
  for (double v : model.objective) {
    if (!std::isfinite(v)) throw std::overflow_error("non-finite objective coefficient");
  }
  model.layout = layout;
  return model;
}

std::vector<double> lift_assignment(const VariableLayout& layout, std::span<const int> phase_index,
                                    std::span<const int> admitted, double tau) {
  std::vector<double> primal(static_cast<std::size_t>(layout.column_count()), 0.0);
  for (int n = 0; n < layout.antennas; ++n) {
    primal[static_cast<std::size_t>(layout.x(n, phase_index[static_cast<std::size_t>(n)]))] = 1.0;
  }
  for (int n = 0; n < layout.antennas; ++n) {
    for (int m = n + 1; m < layout.antennas; ++m) {
      const int col = layout.y(n, m, phase_index[static_cast<std::size_t>(n)],
                               phase_index[static_cast<std::size_t>(m)]);
      primal[static_cast<std::size_t>(col)] = 1.0;
    }
  }
  for (int u = 0; u < layout.users; ++u) {
    primal[static_cast<std::size_t>(layout.mu(u))] = admitted[static_cast<std::size_t>(u)];
  }
  primal[static_cast<std::size_t>(layout.tau())] = tau;
  return primal;
}

Solution reconstruct_solution(const MilpModel& model, std::span<const double> primal,
                              const ProblemInstance& instance) {
  if (!model.layout) throw std::invalid_argument("reconstruct_solution: model has no layout");
  const VariableLayout& layout = *model.layout;
  if (primal.size() != static_cast<std::size_t>(model.column_count())) {
    throw std::invalid_argument("reconstruct_solution: primal length mismatch");
  }
  constexpr double kIntTol = 1e-6;
  for (int j = 0; j < model.column_count(); ++j) {
    if (!model.variables[static_cast<std::size_t>(j)].integral) continue;
    const double v = primal[static_cast<std::size_t>(j)];
    if (std::abs(v - std::round(v)) > kIntTol) {
      std::ostringstream msg;
      msg << model.variables[static_cast<std::size_t>(j)].name << " = " << v << " is fractional";
      throw IntegralityViolation(msg.str());
    }
  }
  Solution sol;
  for (int n = 0; n < layout.antennas; ++n) {
    int best = 0;
    for (int l = 1; l < layout.phases; ++l) {
      if (primal[static_cast<std::size_t>(layout.x(n, l))] >
          primal[static_cast<std::size_t>(layout.x(n, best))]) {
        best = l;
      }
    }
    sol.phase_index.push_back(best);
  }
  for (int u = 0; u < layout.users; ++u) {
    sol.admitted.push_back(static_cast<int>(std::round(primal[static_cast<std::size_t>(layout.mu(u))])));
  }
  sol.tau = std::max(0.0, primal[static_cast<std::size_t>(layout.tau())]);
  finalize(instance, sol);
  if (auto why = feasibility_violation(instance, sol, 1e-6)) throw FeasibilityViolation(*why);
  return sol;
}

double lifting_residual(const MilpModel& model, std::span<const double> primal,
                        const ProblemInstance& instance) {
  const VariableLayout& layout = model.layout.value();
  const PhaseSet& phases = instance.phases;
  std::vector<int> idx;
  for (int n = 0; n < layout.antennas; ++n) {
    int best = 0;
    for (int l = 1; l < layout.phases; ++l) {
      if (primal[static_cast<std::size_t>(layout.x(n, l))] >
          primal[static_cast<std::size_t>(layout.x(n, best))]) {
        best = l;
      }
    }
    idx.push_back(best);
  }
  const cvec w = beamformer(phases, idx);
  double worst = 0.0;
  for (int n = 0; n < layout.antennas; ++n) {
    for (int m = n + 1; m < layout.antennas; ++m) {
      cplx lifted = 0.0;
      for (int r = 0; r < layout.phases; ++r) {
        for (int c = 0; c < layout.phases; ++c) {
          lifted += phases[r] * std::conj(phases[c]) *
                    primal[static_cast<std::size_t>(layout.y(n, m, r, c))];
        }
      }
      worst = std::max(worst, std::abs(lifted - w(n) * std::conj(w(m))));
    }
  }
  return worst;
}

MilpModel apply_symmetry_breaking(MilpModel model) {
  if (!model.layout) throw std::invalid_argument("symmetry breaking needs a phase layout");
  if (!model.layout->uniform_alphabet) {
    throw std::invalid_argument("symmetry breaking requires a uniform phase grid");
  }
  if (model.layout->antennas == 0) return model;
  model.variables[static_cast<std::size_t>(model.layout->x(0, 0))].lower = 1.0;
  return model;
}

}  // namespace isac
