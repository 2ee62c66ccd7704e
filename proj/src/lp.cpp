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

#include "isac/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace isac {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this magnitude a dual step counts as degenerate.
constexpr double kDegenerateStep = 1e-12;
// Relative size of the smallest acceptable LU pivot.
constexpr double kSingularPivot = 1e-11;

}  // namespace

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
  }
  return "unknown";
}

LpEngine::LpEngine(const MilpModel& model, LpOptions options) : opt_(options) {
  m_ = model.row_count();
  n_ = model.column_count();
  maximize_ = model.maximize;
  if (opt_.iteration_limit <= 0) opt_.iteration_limit = 50L * (m_ + n_);
  if (opt_.refactor_interval <= 0) opt_.refactor_interval = 100;

  std::vector<int> count(static_cast<std::size_t>(n_), 0);
  for (const Row& row : model.rows) {
    for (int j : row.index) ++count[static_cast<std::size_t>(j)];
  }
  col_start_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (int j = 0; j < n_; ++j) {
    col_start_[static_cast<std::size_t>(j) + 1] = col_start_[static_cast<std::size_t>(j)] + count[static_cast<std::size_t>(j)];
  }
  col_row_.resize(static_cast<std::size_t>(col_start_.back()));
  col_val_.resize(static_cast<std::size_t>(col_start_.back()));
  std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
  for (int i = 0; i < m_; ++i) {
    const Row& row = model.rows[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < row.index.size(); ++k) {
      const auto slot = static_cast<std::size_t>(fill[static_cast<std::size_t>(row.index[k])]++);
      col_row_[slot] = i;
      col_val_[slot] = row.value[k];
    }
  }

  const auto total = static_cast<std::size_t>(n_ + m_);
  cost_.assign(total, 0.0);
  lo_.assign(total, 0.0);
  hi_.assign(total, 0.0);
  for (int j = 0; j < n_; ++j) {
    const Variable& var = model.variables[static_cast<std::size_t>(j)];
    if (!std::isfinite(var.lower) || !std::isfinite(var.upper)) {
      throw std::invalid_argument("LP engine requires finite bounds; column " + var.name);
    }
    const double c = model.objective[static_cast<std::size_t>(j)];
    cost_[static_cast<std::size_t>(j)] = maximize_ ? -c : c;
    lo_[static_cast<std::size_t>(j)] = var.lower;
    hi_[static_cast<std::size_t>(j)] = var.upper;
  }
  true_cost_ = cost_;
  model_lo_.assign(lo_.begin(), lo_.begin() + n_);
  model_hi_.assign(hi_.begin(), hi_.begin() + n_);
  for (int i = 0; i < m_; ++i) {
    const Row& row = model.rows[static_cast<std::size_t>(i)];
    const auto j = static_cast<std::size_t>(n_ + i);
    switch (row.sense) {
      case RowSense::kLessEqual: lo_[j] = -kInf; hi_[j] = row.rhs; break;
      case RowSense::kGreaterEqual: lo_[j] = row.rhs; hi_[j] = kInf; break;
      case RowSense::kEqual: lo_[j] = hi_[j] = row.rhs; break;
    }
  }
  pos_.assign(total, -1);
  state_.assign(total, VarState::kAtLower);
  x_.assign(total, 0.0);
  d_.assign(total, 0.0);
}

void LpEngine::set_bounds(int column, double lower, double upper) {
  if (column < 0 || column >= n_) throw std::out_of_range("set_bounds: bad column");
  if (!std::isfinite(lower) || !std::isfinite(upper) || lower > upper) {
    throw std::invalid_argument("set_bounds: bounds must be finite and ordered");
  }
  const auto j = static_cast<std::size_t>(column);
  lo_[j] = lower;
  hi_[j] = upper;
  if (have_basis_ && state_[j] != VarState::kBasic) place_nonbasic(column);
}

void LpEngine::set_bounds(std::span<const BoundOverride> overrides) {
  for (const BoundOverride& b : overrides) set_bounds(b.column, b.lower, b.upper);
}

void LpEngine::reset_bounds() {
  for (int j = 0; j < n_; ++j) {
    set_bounds(j, model_lo_[static_cast<std::size_t>(j)], model_hi_[static_cast<std::size_t>(j)]);
  }
}

void LpEngine::place_nonbasic(int j) {
  const auto k = static_cast<std::size_t>(j);
  if (state_[k] == VarState::kAtUpper && !std::isfinite(hi_[k])) state_[k] = VarState::kAtLower;
  if (state_[k] == VarState::kAtLower && !std::isfinite(lo_[k])) state_[k] = VarState::kAtUpper;
  x_[k] = state_[k] == VarState::kAtUpper ? hi_[k] : lo_[k];
}

void LpEngine::load_basis(const Basis& basis) {
  if (basis.empty()) {
    have_basis_ = false;
    return;
  }
  if (basis.basic.size() != static_cast<std::size_t>(m_) ||
      basis.state.size() != static_cast<std::size_t>(n_ + m_)) {
    throw std::invalid_argument("load_basis: basis does not match the model");
  }
  basic_ = basis.basic;
  state_ = basis.state;
  std::fill(pos_.begin(), pos_.end(), -1);
  for (int k = 0; k < m_; ++k) pos_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(k)])] = k;
  for (int j = 0; j < n_ + m_; ++j) {
    if (state_[static_cast<std::size_t>(j)] != VarState::kBasic) place_nonbasic(j);
  }
  have_basis_ = true;
  factored_ = false;
  if (basis.inverse && basis.inverse->rows() == m_ && basis.inverse->cols() == m_) {
    binv_ = *basis.inverse;
    factored_ = true;
    updates_since_refactor_ = basis.updates;
  }
}

Basis LpEngine::basis(bool with_inverse) const {
  Basis out{basic_, state_, nullptr, 0};
  if (with_inverse && factored_) {
    out.inverse = std::make_shared<const DenseInverse>(binv_);
    out.updates = updates_since_refactor_;
  }
  return out;
}

void LpEngine::cold_start() {
  basic_.resize(static_cast<std::size_t>(m_));
  std::fill(pos_.begin(), pos_.end(), -1);
  for (int i = 0; i < m_; ++i) {
    basic_[static_cast<std::size_t>(i)] = n_ + i;
    pos_[static_cast<std::size_t>(n_ + i)] = i;
    state_[static_cast<std::size_t>(n_ + i)] = VarState::kBasic;
  }
  for (int j = 0; j < n_; ++j) {
    const auto k = static_cast<std::size_t>(j);
    state_[k] = cost_[k] < 0.0 ? VarState::kAtUpper : VarState::kAtLower;
    place_nonbasic(j);
  }
  binv_ = -RowMajor::Identity(m_, m_);
  have_basis_ = true;
  factored_ = true;
  updates_since_refactor_ = 0;
}

void LpEngine::perturb_costs() {
  cost_ = true_cost_;
  for (int j = 0; j < n_ + m_; ++j) {
    const auto k = static_cast<std::size_t>(j);
    if (state_[k] == VarState::kBasic || lo_[k] == hi_[k]) continue;
    // Deterministic spread in [0.5, 1) from a multiplicative hash of j.
    const double spread = 0.5 + 0.5 * std::fmod(0.6180339887498949 * (j + 1), 1.0);
    const double shift = opt_.cost_perturbation * (1.0 + std::abs(true_cost_[k])) * spread;
    cost_[k] += state_[k] == VarState::kAtLower ? shift : -shift;
  }
}

void LpEngine::refactor() {
  for (int attempt = 0;; ++attempt) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m_, m_);
    for (int k = 0; k < m_; ++k) {
      const int j = basic_[static_cast<std::size_t>(k)];
      if (j >= n_) {
        b(j - n_, k) = -1.0;
      } else {
        for (int p = col_start_[static_cast<std::size_t>(j)]; p < col_start_[static_cast<std::size_t>(j) + 1]; ++p) {
          b(col_row_[static_cast<std::size_t>(p)], k) = col_val_[static_cast<std::size_t>(p)];
        }
      }
    }
    if (m_ == 0) {
      binv_.resize(0, 0);
      break;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    const Eigen::VectorXd diag = lu.matrixLU().diagonal().cwiseAbs();
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    if (diag.minCoeff() > kSingularPivot * scale || attempt > 2) {
      binv_ = lu.inverse();
      break;
    }
    // Column elimination in basis order finds the dependent basic columns;
    // each one is replaced by the logical of a row left without a pivot.
    std::vector<bool> row_used(static_cast<std::size_t>(m_), false);
    std::vector<int> dependent;
    for (int k = 0; k < m_; ++k) {
      int piv = -1;
      double best = kSingularPivot * scale;
      for (int i = 0; i < m_; ++i) {
        if (!row_used[static_cast<std::size_t>(i)] && std::abs(b(i, k)) > best) {
          best = std::abs(b(i, k));
          piv = i;
        }
      }
      if (piv < 0) {
        dependent.push_back(k);
        continue;
      }
      row_used[static_cast<std::size_t>(piv)] = true;
      for (int c = k + 1; c < m_; ++c) {
        const double factor = b(piv, c) / b(piv, k);
        if (factor != 0.0) b.col(c) -= factor * b.col(k);
      }
    }
    std::size_t next = 0;
    for (int i = 0; i < m_ && next < dependent.size(); ++i) {
      if (row_used[static_cast<std::size_t>(i)]) continue;
      const int k = dependent[next++];
      const int out = basic_[static_cast<std::size_t>(k)];
      const int in = n_ + i;
      if (pos_[static_cast<std::size_t>(in)] >= 0) continue;
      pos_[static_cast<std::size_t>(out)] = -1;
      const auto o = static_cast<std::size_t>(out);
      state_[o] = (std::isfinite(lo_[o]) && (!std::isfinite(hi_[o]) ||
                                               std::abs(x_[o] - lo_[o]) <= std::abs(hi_[o] - x_[o])))
                      ? VarState::kAtLower
                      : VarState::kAtUpper;
      place_nonbasic(out);
      basic_[static_cast<std::size_t>(k)] = in;
      pos_[static_cast<std::size_t>(in)] = k;
      state_[static_cast<std::size_t>(in)] = VarState::kBasic;
    }
  }
  factored_ = true;
  updates_since_refactor_ = 0;
}

void LpEngine::compute_primal() {
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
  for (int j = 0; j < n_ + m_; ++j) {
    const auto k = static_cast<std::size_t>(j);
    if (state_[k] == VarState::kBasic || x_[k] == 0.0) continue;
    if (j >= n_) {
      rhs(j - n_) += x_[k];
    } else {
      for (int p = col_start_[k]; p < col_start_[k + 1]; ++p) {
        rhs(col_row_[static_cast<std::size_t>(p)]) -= col_val_[static_cast<std::size_t>(p)] * x_[k];
      }
    }
  }
  const Eigen::VectorXd xb = binv_ * rhs;
  for (int k = 0; k < m_; ++k) x_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(k)])] = xb(k);
}

void LpEngine::compute_duals() {
  Eigen::VectorXd cb(m_);
  for (int k = 0; k < m_; ++k) cb(k) = cost_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(k)])];
  const Eigen::RowVectorXd y = cb.transpose() * binv_;
  for (int j = 0; j < n_ + m_; ++j) {
    const auto k = static_cast<std::size_t>(j);
    d_[k] = state_[k] == VarState::kBasic ? 0.0 : cost_[k] - row_dot(y, j);
  }
}

double LpEngine::row_dot(const Eigen::RowVectorXd& rho, int j) const {
  if (j >= n_) return -rho(j - n_);
  double sum = 0.0;
  const auto k = static_cast<std::size_t>(j);
  for (int p = col_start_[k]; p < col_start_[k + 1]; ++p) {
    sum += rho(col_row_[static_cast<std::size_t>(p)]) * col_val_[static_cast<std::size_t>(p)];
  }
  return sum;
}

void LpEngine::ftran(int j, Eigen::VectorXd& out) const {
  if (j >= n_) {
    out = -binv_.col(j - n_);
    return;
  }
  out.setZero(m_);
  const auto k = static_cast<std::size_t>(j);
  for (int p = col_start_[k]; p < col_start_[k + 1]; ++p) {
    out.noalias() += col_val_[static_cast<std::size_t>(p)] * binv_.col(col_row_[static_cast<std::size_t>(p)]);
  }
}

void LpEngine::pivot(int row, int entering, const Eigen::VectorXd& column) {
  const int leaving = basic_[static_cast<std::size_t>(row)];
  const Eigen::RowVectorXd pivot_row = binv_.row(row) / column(row);
  binv_.noalias() -= column * pivot_row;
  binv_.row(row) = pivot_row;
  basic_[static_cast<std::size_t>(row)] = entering;
  pos_[static_cast<std::size_t>(entering)] = row;
  pos_[static_cast<std::size_t>(leaving)] = -1;
  state_[static_cast<std::size_t>(entering)] = VarState::kBasic;
  ++updates_since_refactor_;
}

double LpEngine::infeasibility(int pos) const {
  const auto j = static_cast<std::size_t>(basic_[static_cast<std::size_t>(pos)]);
  if (x_[j] < lo_[j] - opt_.feasibility_tol) return lo_[j] - x_[j];
  if (x_[j] > hi_[j] + opt_.feasibility_tol) return x_[j] - hi_[j];
  return 0.0;
}

bool LpEngine::make_dual_feasible_by_flips() {
  bool flipped = false;
  for (int j = 0; j < n_ + m_; ++j) {
    const auto k = static_cast<std::size_t>(j);
    if (state_[k] == VarState::kBasic || lo_[k] == hi_[k]) continue;
    if (!std::isfinite(lo_[k]) || !std::isfinite(hi_[k])) continue;
    if (state_[k] == VarState::kAtLower && d_[k] < -opt_.optimality_tol) {
      state_[k] = VarState::kAtUpper;
    } else if (state_[k] == VarState::kAtUpper && d_[k] > opt_.optimality_tol) {
      state_[k] = VarState::kAtLower;
    } else {
      continue;
    }
    place_nonbasic(j);
    flipped = true;
  }
  return flipped;
}

void LpEngine::shift_costs() {
  for (int j = 0; j < n_ + m_; ++j) {
    const auto k = static_cast<std::size_t>(j);
    if (state_[k] == VarState::kBasic || lo_[k] == hi_[k]) continue;
    if ((state_[k] == VarState::kAtLower) ? d_[k] < 0.0 : d_[k] > 0.0) {
      cost_[k] -= d_[k];
      d_[k] = 0.0;
    }
  }
}

LpEngine::StepResult LpEngine::dual_step(bool bland) {
  int row = -1;
  double worst = 0.0;
  for (int k = 0; k < m_; ++k) {
    const double v = infeasibility(k);
    if (v <= 0.0) continue;
    if (bland) {
      if (row < 0 || basic_[static_cast<std::size_t>(k)] < basic_[static_cast<std::size_t>(row)]) row = k;
    } else if (v > worst) {
      worst = v;
      row = k;
    }
  }
  if (row < 0) return StepResult::kOptimal;

  const int leaving = basic_[static_cast<std::size_t>(row)];
  const auto lv = static_cast<std::size_t>(leaving);
  const bool to_lower = x_[lv] < lo_[lv];
  const Eigen::RowVectorXd rho = binv_.row(row);

  // Pivot row entries for every nonbasic column; fixed columns never enter.
  std::vector<std::pair<int, double>> alpha;
  alpha.reserve(static_cast<std::size_t>(n_ + m_ - m_));
  for (int j = 0; j < n_ + m_; ++j) {
    const auto k = static_cast<std::size_t>(j);
    if (state_[k] == VarState::kBasic) continue;
    const double a = row_dot(rho, j);
    if (a != 0.0) alpha.emplace_back(j, a);
  }

  auto eligible = [&](int j, double a) {
    const auto k = static_cast<std::size_t>(j);
    if (lo_[k] == hi_[k] || std::abs(a) <= opt_.pivot_tol) return false;
    const bool at_lower = state_[k] == VarState::kAtLower;
    return to_lower ? (at_lower ? a < 0.0 : a > 0.0) : (at_lower ? a > 0.0 : a < 0.0);
  };
  auto slack = [&](int j) {
    const auto k = static_cast<std::size_t>(j);
    return std::max(0.0, state_[k] == VarState::kAtLower ? d_[k] : -d_[k]);
  };

  int entering = -1;
  double entering_alpha = 0.0;
  if (bland) {
    double best = kInf;
    for (const auto& [j, a] : alpha) {
      if (!eligible(j, a)) continue;
      const double ratio = slack(j) / std::abs(a);
      if (ratio < best) {
        best = ratio;
        entering = j;
        entering_alpha = a;
      }
    }
  } else {
    double bound = kInf;
    for (const auto& [j, a] : alpha) {
      if (eligible(j, a)) bound = std::min(bound, (slack(j) + opt_.optimality_tol) / std::abs(a));
    }
    double best_alpha = 0.0;
    for (const auto& [j, a] : alpha) {
      if (!eligible(j, a) || slack(j) / std::abs(a) > bound) continue;
      if (std::abs(a) > best_alpha) {
        best_alpha = std::abs(a);
        entering = j;
        entering_alpha = a;
      }
    }
  }
  if (entering < 0) return StepResult::kInfeasible;

  Eigen::VectorXd column;
  ftran(entering, column);
  const double pivot_value = column(row);
  if (std::abs(pivot_value - entering_alpha) > 1e-7 * (1.0 + std::abs(entering_alpha)) ||
      std::abs(pivot_value) <= opt_.pivot_tol) {
    // The updated inverse drifted; rebuild it and retry from fresh values.
    refactor();
    compute_primal();
    compute_duals();
    return StepResult::kPivoted;
  }

  const double bound_value = to_lower ? lo_[lv] : hi_[lv];
  const double primal_step = (x_[lv] - bound_value) / pivot_value;
  for (int k = 0; k < m_; ++k) {
    x_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(k)])] -= primal_step * column(k);
  }
  x_[static_cast<std::size_t>(entering)] += primal_step;
  x_[lv] = bound_value;

  // A Harris pass may pick a column whose reduced cost is slightly on the
  // wrong side; shifting its cost to zero keeps the step from going backwards.
  const auto q = static_cast<std::size_t>(entering);
  if ((state_[q] == VarState::kAtLower) ? d_[q] < 0.0 : d_[q] > 0.0) {
    cost_[q] -= d_[q];
    d_[q] = 0.0;
  }
  const double dual_step = d_[q] / pivot_value;
  for (const auto& [j, a] : alpha) {
    const auto k = static_cast<std::size_t>(j);
    d_[k] -= dual_step * a;
    if (lo_[k] != hi_[k] && ((state_[k] == VarState::kAtLower) ? d_[k] < 0.0 : d_[k] > 0.0)) {
      cost_[k] -= d_[k];
      d_[k] = 0.0;
    }
  }
  d_[static_cast<std::size_t>(entering)] = 0.0;
  d_[lv] = -dual_step;
  last_dual_step_ = dual_step;

  pivot(row, entering, column);
  state_[lv] = to_lower ? VarState::kAtLower : VarState::kAtUpper;
  return StepResult::kPivoted;
}

LpEngine::StepResult LpEngine::primal_step(bool bland) {
  int entering = -1;
  double best = 0.0;
  for (int j = 0; j < n_ + m_; ++j) {
    const auto k = static_cast<std::size_t>(j);
    if (state_[k] == VarState::kBasic || lo_[k] == hi_[k]) continue;
    double violation = 0.0;
    if (state_[k] == VarState::kAtLower && d_[k] < -opt_.optimality_tol) violation = -d_[k];
    if (state_[k] == VarState::kAtUpper && d_[k] > opt_.optimality_tol) violation = d_[k];
    if (violation <= 0.0) continue;
    if (bland) {
      entering = j;
      break;
    }
    if (violation > best) {
      best = violation;
      entering = j;
    }
  }
  if (entering < 0) return StepResult::kOptimal;

  const auto q = static_cast<std::size_t>(entering);
  const double dir = state_[q] == VarState::kAtLower ? 1.0 : -1.0;
  Eigen::VectorXd column;
  ftran(entering, column);

  // x_B moves by -t * dir * column as x_q moves by t * dir.
  auto limit = [&](int k, double tol) {
    const double rate = -dir * column(k);
    const auto j = static_cast<std::size_t>(basic_[static_cast<std::size_t>(k)]);
    if (rate < -opt_.pivot_tol && std::isfinite(lo_[j])) return (x_[j] - lo_[j] + tol) / -rate;
    if (rate > opt_.pivot_tol && std::isfinite(hi_[j])) return (hi_[j] - x_[j] + tol) / rate;
    return kInf;
  };
  double bound = kInf;
  for (int k = 0; k < m_; ++k) bound = std::min(bound, limit(k, bland ? 0.0 : opt_.feasibility_tol));
  int row = -1;
  double best_pivot = 0.0;
  for (int k = 0; k < m_; ++k) {
    const double ratio = limit(k, 0.0);
    if (ratio > bound || !std::isfinite(ratio)) continue;
    if (std::abs(column(k)) > best_pivot) {
      best_pivot = std::abs(column(k));
      row = k;
    }
  }
  const double flip = hi_[q] - lo_[q];
  if (row < 0 && !std::isfinite(flip)) return StepResult::kUnbounded;
  const double step = row < 0 ? kInf : std::max(0.0, limit(row, 0.0));
  if (flip <= step) {
    for (int k = 0; k < m_; ++k) {
      x_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(k)])] -= flip * dir * column(k);
    }
    state_[q] = dir > 0 ? VarState::kAtUpper : VarState::kAtLower;
    place_nonbasic(entering);
    return StepResult::kPivoted;
  }
  const int leaving = basic_[static_cast<std::size_t>(row)];
  const auto lv = static_cast<std::size_t>(leaving);
  const bool hits_lower = -dir * column(row) < 0.0;
  for (int k = 0; k < m_; ++k) {
    x_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(k)])] -= step * dir * column(k);
  }
  x_[q] += step * dir;
  pivot(row, entering, column);
  state_[lv] = hits_lower ? VarState::kAtLower : VarState::kAtUpper;
  place_nonbasic(leaving);
  compute_duals();
  return StepResult::kPivoted;
}

LpResult LpEngine::finish(LpStatus status, long iterations, bool used_bland) {
  LpResult result;
  result.status = status;
  result.iterations = iterations;
  result.used_bland = used_bland;
  result.primal.assign(x_.begin(), x_.begin() + n_);
  double obj = 0.0;
  cost_ = true_cost_;
  for (int j = 0; j < n_; ++j) obj += cost_[static_cast<std::size_t>(j)] * x_[static_cast<std::size_t>(j)];
  result.objective = maximize_ ? -obj : obj;
  result.basis = basis();
  total_iterations_ += iterations;
  return result;
}

LpResult LpEngine::solve() {
  if (!have_basis_) {
    cold_start();
  } else if (!factored_) {
    refactor();
  }
  if (opt_.cost_perturbation > 0.0) {
    perturb_costs();
  } else {
    cost_ = true_cost_;
  }
  compute_primal();
  compute_duals();
  if (make_dual_feasible_by_flips()) compute_primal();
  shift_costs();

  bool cleanup = false;
  bool recomputed = false;
  int restores = 0;
  long iterations = 0;
  int degenerate_run = 0;
  bool bland = false;
  bool used_bland = false;
  auto refresh = [&] {
    refactor();
    compute_primal();
    compute_duals();
    if (!cleanup) shift_costs();
  };
  for (;;) {
    if (iterations >= opt_.iteration_limit) return finish(LpStatus::kIterationLimit, iterations, used_bland);
    if (updates_since_refactor_ >= opt_.refactor_interval) refresh();

    last_dual_step_ = 1.0;
    const StepResult dual = dual_step(bland);
    if (dual == StepResult::kPivoted) {
      ++iterations;
      recomputed = false;
      degenerate_run = std::abs(last_dual_step_) <= kDegenerateStep ? degenerate_run + 1 : 0;
      if (degenerate_run >= opt_.bland_threshold) bland = used_bland = true;
      continue;
    }
    if (dual == StepResult::kInfeasible) {
      if (updates_since_refactor_ > 0) {
        refresh();
        continue;
      }
      return finish(LpStatus::kInfeasible, iterations, used_bland);
    }

    const StepResult primal = primal_step(bland);
    if (primal == StepResult::kPivoted) {
      ++iterations;
      recomputed = false;
      continue;
    }
    if (primal == StepResult::kUnbounded) return finish(LpStatus::kUnbounded, iterations, used_bland);

    if (!recomputed) {
      // Confirm optimality on values recomputed from the current inverse.
      compute_primal();
      compute_duals();
      if (!cleanup) shift_costs();
      recomputed = true;
      continue;
    }
    if (cost_ != true_cost_ && restores < 3) {
      // Drop perturbations and shifts; primal pivots repair the duals.
      cost_ = true_cost_;
      compute_duals();
      cleanup = true;
      recomputed = false;
      ++restores;
      continue;
    }
    return finish(LpStatus::kOptimal, iterations, used_bland);
  }
}

LpResult solve_lp(const MilpModel& model, std::span<const BoundOverride> overrides,
                  const Basis* warm_basis, const LpOptions& options) {
  LpEngine engine(model, options);
  engine.set_bounds(overrides);
  if (warm_basis != nullptr) engine.load_basis(*warm_basis);
  return engine.solve();
}

LpResult tighten_bound_and_resolve(const MilpModel& model, const LpResult& prior,
                                   std::span<const BoundOverride> overrides, BoundOverride change,
                                   const LpOptions& options) {
  LpEngine engine(model, options);
  engine.set_bounds(overrides);
  engine.set_bounds(change.column, change.lower, change.upper);
  engine.load_basis(prior.basis);
  return engine.solve();
}

}  // namespace isac
