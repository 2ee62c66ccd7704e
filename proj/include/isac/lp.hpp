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

// Bounded-variable revised simplex for LP relaxations of MilpModel.
//
// The engine works on the computational form A x - r = 0 with one logical
// variable r_i per row (bounds taken from the row sense and rhs) and box
// bounds on every structural column. Because every structural column is
// boxed, the all-logical basis with each structural parked at the bound its
// cost prefers is dual feasible, so cold and warm solves both run the dual
// simplex. Costs are perturbed up front and shifted whenever a reduced cost
// drifts to the wrong sign, so the dual objective never decreases; the true
// costs come back at the end and a primal simplex pass repairs the duals.
// The basis inverse is kept explicitly, updated per pivot and rebuilt from an
// LU factorization every `refactor_interval` pivots.

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "isac/milp_model.hpp"

namespace isac {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(LpStatus status);

enum class VarState : std::uint8_t { kBasic, kAtLower, kAtUpper };

using DenseInverse = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Basis over structural columns followed by one logical per row.
struct Basis {
  std::vector<int> basic;       // column index per basis position
  std::vector<VarState> state;  // per column (structural + logical)
  // Optional copy of the basis inverse; loading it skips a factorization.
  std::shared_ptr<const DenseInverse> inverse;
  int updates = 0;  // pivots applied to `inverse` since its factorization

  bool empty() const { return basic.empty(); }
};

struct BoundOverride {
  int column = 0;
  double lower = 0.0;
  double upper = 0.0;
};

struct LpOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  // 0 selects 50 * (rows + columns).
  long iteration_limit = 0;
  int refactor_interval = 100;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int bland_threshold = 1000;
  // Relative size of the cost shifts applied to nonbasic columns before the
  // dual simplex runs; 0 disables them. The true costs are restored and any
  // resulting dual infeasibility is removed by primal pivots.
  double cost_perturbation = 1e-6;
};

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> primal;  // structural values
  double objective = 0.0;      // in the model's own sense
  Basis basis;
  long iterations = 0;
  bool used_bland = false;
};

class LpEngine {
 public:
  explicit LpEngine(const MilpModel& model, LpOptions options = {});

  int rows() const { return m_; }
  int columns() const { return n_; }

  void set_bounds(int column, double lower, double upper);
  void set_bounds(std::span<const BoundOverride> overrides);
  // Back to the model's own bounds on every structural column.
  void reset_bounds();
  double lower(int column) const { return lo_[static_cast<std::size_t>(column)]; }
  double upper(int column) const { return hi_[static_cast<std::size_t>(column)]; }

  // Starts the next solve from `basis` (as returned by a previous solve of
  // the same model). An empty basis selects the cold start.
  void load_basis(const Basis& basis);
  Basis basis(bool with_inverse = false) const;

  // Solves from the current basis (cold start on the first call).
  LpResult solve();

  long total_iterations() const { return total_iterations_; }

 private:
  using RowMajor = DenseInverse;

  void cold_start();
  void perturb_costs();
  void refactor();
  void compute_primal();
  void compute_duals();
  void place_nonbasic(int j);
  bool make_dual_feasible_by_flips();
  // Moves each wrong-signed nonbasic reduced cost to zero by shifting its cost.
  void shift_costs();
  double infeasibility(int pos) const;
  void pivot(int row, int entering, const Eigen::VectorXd& column);
  void ftran(int j, Eigen::VectorXd& out) const;
  double row_dot(const Eigen::RowVectorXd& rho, int j) const;
  enum class StepResult { kPivoted, kOptimal, kInfeasible, kUnbounded };
  StepResult dual_step(bool bland);
  StepResult primal_step(bool bland);
  LpResult finish(LpStatus status, long iterations, bool used_bland);

  LpOptions opt_;
  int m_ = 0;
  int n_ = 0;
  bool maximize_ = true;
  // Structural columns, compressed by column.
  std::vector<int> col_start_;
  std::vector<int> col_row_;
  std::vector<double> col_val_;
  std::vector<double> cost_;  // minimization costs, structural + logical
  std::vector<double> true_cost_;
  std::vector<double> model_lo_, model_hi_;
  std::vector<double> lo_, hi_;  // current bounds, structural + logical

  std::vector<int> basic_;
  std::vector<int> pos_;  // basis position or -1
  std::vector<VarState> state_;
  std::vector<double> x_;
  std::vector<double> d_;
  RowMajor binv_;
  bool have_basis_ = false;
  bool factored_ = false;
  int updates_since_refactor_ = 0;
  long total_iterations_ = 0;
  double last_dual_step_ = 0.0;
};

// One-shot solve with optional bound overrides and warm basis.
LpResult solve_lp(const MilpModel& model, std::span<const BoundOverride> overrides = {},
                  const Basis* warm_basis = nullptr, const LpOptions& options = {});

// Re-solves after changing the bounds of one column, warm-started from the
// optimal basis of `prior` (computed under `overrides`).
LpResult tighten_bound_and_resolve(const MilpModel& model, const LpResult& prior,
                                   std::span<const BoundOverride> overrides, BoundOverride change,
                                   const LpOptions& options = {});

}  // namespace isac
