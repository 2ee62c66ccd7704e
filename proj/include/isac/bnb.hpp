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

// LP-based branch and bound for binary MILPs, the phase-selection driver on
// top of it, and the exhaustive-search oracle.

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "isac/instance.hpp"
#include "isac/lp.hpp"
#include "isac/milp_model.hpp"

namespace isac {

enum class NodeOrder { kBestBound, kDepthFirst };

struct BnbOptions {
  double gap = 1e-6;  // absolute
  long node_limit = 0;       // 0: unlimited
  double time_limit_s = 0.0;  // 0: unlimited
  bool symmetry_break = false;
  NodeOrder node_order = NodeOrder::kBestBound;
  // Run one pass of single-antenna improvement on heuristic incumbents.
  bool local_search = true;
  // Memory for basis inverses kept with open nodes.
  double inverse_cache_mb = 256.0;
  LpOptions lp;
};

struct MilpResult {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<double> primal;  // best integral point found
  double objective = 0.0;
  double bound = 0.0;  // proven upper bound (maximization)
  long nodes = 0;
  long lp_iterations = 0;
  double wall_ms = 0.0;
  bool has_incumbent() const { return !primal.empty(); }
};

// Maps a node's LP primal to a candidate integral point (or nothing). The
// driver checks the candidate against the model before accepting it.
using IncumbentHeuristic =
    std::function<std::optional<std::vector<double>>(std::span<const double> lp_primal)>;
// Called on every accepted incumbent.
using IncumbentObserver = std::function<void(std::span<const double> primal, double objective)>;

// Maximizes or minimizes `model` with all integral columns binary. Branches on
// the most fractional column among those with the highest priority, ties to
// the lowest index. For models with a phase layout the up-branch of x[n][l]
// also fixes the other phases of antenna n to zero.
MilpResult branch_and_bound(const MilpModel& model, const BnbOptions& options = {},
                            const IncumbentHeuristic& heuristic = {},
                            const IncumbentObserver& observer = {});

struct AdmissionAndFloor {
  std::vector<int> admitted;
  double tau = 0.0;
};

// Best (mu, tau) for a fixed beamformer: admit exactly the users meeting the
// threshold (all or none when admission is coupled) and take tau as the
// smallest sensing SNR over the grid.
AdmissionAndFloor optimal_mu_tau_given_w(const cvec& w, const ProblemInstance& instance);

// Finalized solution for a phase tuple with the closed-form (mu, tau).
Solution evaluate_phases(const ProblemInstance& instance, std::span<const int> phase_index);

// Improves `solution` one antenna at a time until no single change helps.
void local_search(const ProblemInstance& instance, Solution& solution);

// Solves the phase-selection MILP built by build_milp(instance).
Solution solve(const MilpModel& model, const ProblemInstance& instance,
               const BnbOptions& options = {}, const IncumbentObserver& observer = {});

class GuardExceeded : public std::runtime_error {
 public:
  explicit GuardExceeded(double candidates);
  double candidates() const { return candidates_; }

 private:
  double candidates_;
};

// Enumerates all L^N phase tuples; ties keep the first tuple in
// lexicographic order. Throws GuardExceeded when L^N > max_candidates.
Solution exhaustive_search(const ProblemInstance& instance, double max_candidates = 1e8);

}  // namespace isac
