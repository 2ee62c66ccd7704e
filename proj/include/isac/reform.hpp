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

// Exact MILP encoding of the joint admission / discrete-phase beamforming
// problem.
//
// Each antenna n selects one phase through binaries x[n][l] (one-hot rows
// "D2_n"). For every antenna pair n < m the product x_n x_m^T is replaced by a
// continuous block y[n][m] in [0,1]^{L x L} whose column sums equal x_m ("H1")
// and row sums equal x_n ("H2"); on integral x these force y = x_n x_m^T. The
// lifted matrix W = w w^H is never stored: its upper triangle is the affine
// expression W_nm = sum_{r,c} s_r conj(s_c) y[n][m][r][c], the diagonal is the
// constant delta^2, and the lower triangle is the conjugate of the upper.
// Substituting into w^H M w gives rows that are linear in y:
//
//   delta^2 sum_n Re M_nn + sum_{n<m} sum_{r,c} 2 Re(conj(s_r) M_nm s_c) y[n][m][r][c]
//
// which appear as "C3_u" (>= Gamma mu_u) and "C5_k" (>= tau).
//
// Column order: x (antenna-major), y (pairs, then r, then c), mu, tau.
// Row order: D2, H1, H2, C3, C5, then "CPL_u" (mu_u = mu_{u+1}) when
// admission is coupled.

#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "isac/instance.hpp"
#include "isac/milp_model.hpp"

namespace isac {

class IntegralityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FeasibilityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

MilpModel build_milp(const ProblemInstance& instance);

// Coefficient of y[n][m][r][c] in the row generated by Hermitian `m`.
double lifted_coefficient(const cmat& matrix, const PhaseSet& phases, int n, int m, int r, int c);

// Full primal vector for a phase assignment: one-hot x, y = x_n x_m^T, mu, tau.
std::vector<double> lift_assignment(const VariableLayout& layout, std::span<const int> phase_index,
                                    std::span<const int> admitted, double tau);

// Maps integral primal values back to phases, admission and tau. Throws
// IntegralityViolation if a binary is fractional beyond 1e-6 and
// FeasibilityViolation if the recomputed SNRs miss C3/C5 by more than 1e-6
// (relative).
Solution reconstruct_solution(const MilpModel& model, std::span<const double> primal,
                              const ProblemInstance& instance);

// max over n < m of |sum_{r,c} s_r conj(s_c) y[n][m][r][c] - w_n conj(w_m)|.
double lifting_residual(const MilpModel& model, std::span<const double> primal,
                        const ProblemInstance& instance);

// Fixes antenna 0 to phase 0. Every assignment has a rotated twin with that
// property, so the optimum is unchanged. Throws std::invalid_argument unless
// the model's alphabet is a uniform grid.
MilpModel apply_symmetry_breaking(MilpModel model);

}  // namespace isac
