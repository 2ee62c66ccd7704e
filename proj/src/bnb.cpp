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

#include "isac/bnb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>

#include "isac/reform.hpp"

namespace isac {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIntegralityTol = 1e-6;
constexpr double kCandidateTol = 1e-6;

struct Node {
  std::vector<BoundOverride> fixes;
  double bound = kInf;  // parent LP value, in the "larger is better" score
  int depth = 0;
  std::shared_ptr<const Basis> basis;
  long parent = -1;
};

// Most fractional integral column among the highest branching priority.
int select_branch_column(const MilpModel& model, std::span<const double> primal) {
  int best = -1;
  int best_priority = std::numeric_limits<int>::min();
  double best_distance = 0.0;
  for (int j = 0; j < model.column_count(); ++j) {
    const Variable& var = model.variables[static_cast<std::size_t>(j)];
    if (!var.integral) continue;
    const double v = primal[static_cast<std::size_t>(j)];
    const double frac = v - std::floor(v);
    const double distance = std::min(frac, 1.0 - frac);
    if (distance <= kIntegralityTol) continue;
    if (var.branch_priority > best_priority ||
        (var.branch_priority == best_priority && distance > best_distance)) {
      best = j;
      best_priority = var.branch_priority;
      best_distance = distance;
    }
  }
  return best;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

MilpResult branch_and_bound(const MilpModel& model, const BnbOptions& options,
                            const IncumbentHeuristic& heuristic, const IncumbentObserver& observer) {
  const auto start = std::chrono::steady_clock::now();
  for (const Variable& var : model.variables) {
    if (var.integral && (var.lower < 0.0 || var.upper > 1.0)) {
      throw std::invalid_argument("branch_and_bound: integral column " + var.name + " is not binary");
    }
  }
  const double sign = model.maximize ? 1.0 : -1.0;
  LpEngine engine(model, options.lp);

  std::map<long, Node> open;
  std::set<std::pair<double, long>> by_bound;  // (-bound, id)
  long next_id = 0;
  auto push = [&](Node node) {
    const long id = next_id++;
    by_bound.emplace(-node.bound, id);
    open.emplace(id, std::move(node));
  };
  push(Node{});

  MilpResult result;
  double incumbent = -kInf;
  double dropped_bound = -kInf;  // best bound among nodes closed without proof
  bool unresolved = false;
  long last_solved = -1;
  long cached_inverses = 0;
  const double inverse_bytes = 8.0 * model.row_count() * model.row_count();

  auto accept = [&](std::vector<double> candidate) {
    if (model.max_violation(candidate) > kCandidateTol) return;
    if (model.max_integrality_violation(candidate) > kIntegralityTol) return;
    for (int j = 0; j < model.column_count(); ++j) {
      if (model.variables[static_cast<std::size_t>(j)].integral) {
        candidate[static_cast<std::size_t>(j)] = std::round(candidate[static_cast<std::size_t>(j)]);
      }
    }
    const double score = sign * model.objective_value(candidate);
    if (result.has_incumbent() && score <= incumbent) return;
    incumbent = score;
    result.primal = std::move(candidate);
    if (observer) observer(result.primal, sign * incumbent);
  };

  result.status = SolveStatus::kOptimal;
  while (!open.empty()) {
    if (options.node_limit > 0 && result.nodes >= options.node_limit) {
      result.status = SolveStatus::kNodeLimit;
      break;
    }
    if (options.time_limit_s > 0.0 && elapsed_ms(start) >= 1000.0 * options.time_limit_s) {
      result.status = SolveStatus::kTimeLimit;
      break;
    }
    const bool dive = options.node_order == NodeOrder::kDepthFirst || !result.has_incumbent();
    const long id = dive ? open.rbegin()->first : by_bound.begin()->second;
    auto it = open.find(id);
    Node node = std::move(it->second);
    open.erase(it);
    if (node.basis && node.basis->inverse && node.basis.use_count() == 1) --cached_inverses;
    by_bound.erase({-node.bound, id});
    if (result.has_incumbent() && node.bound <= incumbent + options.gap) {
      dropped_bound = std::max(dropped_bound, node.bound);
      continue;
    }

    engine.reset_bounds();
    engine.set_bounds(node.fixes);
    if (node.parent != last_solved || node.parent < 0) {
      engine.load_basis(node.basis ? *node.basis : Basis{});
    }
    const LpResult lp = engine.solve();
    ++result.nodes;
    last_solved = id;
    if (lp.status == LpStatus::kInfeasible) continue;
    if (lp.status != LpStatus::kOptimal) {
      unresolved = true;
      dropped_bound = std::max(dropped_bound, node.bound);
      continue;
    }
    const double bound = std::min(node.bound, sign * lp.objective);

    if (heuristic) {
      if (auto candidate = heuristic(lp.primal)) accept(std::move(*candidate));
    }
    const int column = select_branch_column(model, lp.primal);
    if (column < 0) {
      accept(lp.primal);
      continue;
    }
    if (result.has_incumbent() && bound <= incumbent + options.gap) {
      dropped_bound = std::max(dropped_bound, bound);
      continue;
    }

    // The second child is usually solved after a jump; a cached inverse
    // spares it a factorization while the cache stays within budget.
    const bool cache_inverse = static_cast<double>(cached_inverses) * inverse_bytes <
                               options.inverse_cache_mb * 1048576.0;
    auto basis = std::make_shared<const Basis>(cache_inverse ? engine.basis(true) : lp.basis);
    if (cache_inverse) ++cached_inverses;
    Node down{node.fixes, bound, node.depth + 1, basis, id};
    down.fixes.push_back({column, 0.0, 0.0});
    Node up{node.fixes, bound, node.depth + 1, basis, id};
    up.fixes.push_back({column, 1.0, 1.0});
    if (model.layout && column < model.layout->antennas * model.layout->phases) {
      const int antenna = column / model.layout->phases;
      for (int l = 0; l < model.layout->phases; ++l) {
        const int sibling = model.layout->x(antenna, l);
        if (sibling != column) up.fixes.push_back({sibling, 0.0, 0.0});
      }
    }
    // The up branch is pushed last so a dive explores it first.
    push(std::move(down));
    push(std::move(up));
  }

  double bound = dropped_bound;
  for (const auto& [key, id] : by_bound) bound = std::max(bound, -key);
  result.lp_iterations = engine.total_iterations();
  result.wall_ms = elapsed_ms(start);
  if (!result.has_incumbent()) {
    if (result.status == SolveStatus::kOptimal && !unresolved) result.status = SolveStatus::kInfeasible;
    result.bound = sign * bound;
    return result;
  }
  bound = std::max(bound, incumbent);
  result.objective = sign * incumbent;
  result.bound = sign * bound;
  if (result.status == SolveStatus::kOptimal && bound - incumbent > options.gap) {
    result.status = SolveStatus::kHeuristic;
  }
  return result;
}

AdmissionAndFloor optimal_mu_tau_given_w(const cvec& w, const ProblemInstance& instance) {
  AdmissionAndFloor out;
  out.admitted.assign(static_cast<std::size_t>(instance.n_users), 0);
  bool all = true;
  for (int u = 0; u < instance.n_users; ++u) {
    const bool ok = snr_com(w, instance.user_snr[static_cast<std::size_t>(u)]) >= instance.snr_threshold;
    out.admitted[static_cast<std::size_t>(u)] = ok ? 1 : 0;
    all = all && ok;
  }
  if (instance.couple_admission) {
    std::fill(out.admitted.begin(), out.admitted.end(), all ? 1 : 0);
  }
  out.tau = instance.tau_max;
  for (const cmat& target : instance.target_snr) out.tau = std::min(out.tau, snr_sen(w, target));
  out.tau = std::max(out.tau, 0.0);
  return out;
}

Solution evaluate_phases(const ProblemInstance& instance, std::span<const int> phase_index) {
  Solution sol;
  sol.phase_index.assign(phase_index.begin(), phase_index.end());
  AdmissionAndFloor best = optimal_mu_tau_given_w(beamformer(instance.phases, phase_index), instance);
  sol.admitted = std::move(best.admitted);
  sol.tau = best.tau;
  finalize(instance, sol);
  return sol;
}

void local_search(const ProblemInstance& instance, Solution& solution) {
  const int phases = instance.phases.size();
  bool improved = true;
  while (improved) {
    improved = false;
    for (int n = 0; n < instance.n_antennas; ++n) {
      const int current = solution.phase_index[static_cast<std::size_t>(n)];
      for (int l = 0; l < phases; ++l) {
        if (l == current) continue;
        std::vector<int> trial = solution.phase_index;
        trial[static_cast<std::size_t>(n)] = l;
        Solution candidate = evaluate_phases(instance, trial);
        if (candidate.f > solution.f) {
          solution = std::move(candidate);
          improved = true;
          break;
        }
      }
    }
  }
}

Solution solve(const MilpModel& model, const ProblemInstance& instance, const BnbOptions& options,
               const IncumbentObserver& observer) {
  if (!model.layout) throw std::invalid_argument("solve: model has no phase layout");
  const MilpModel fixed = options.symmetry_break ? apply_symmetry_breaking(model) : MilpModel{};
  const MilpModel& active = options.symmetry_break ? fixed : model;
  const VariableLayout& layout = *active.layout;

  auto heuristic = [&](std::span<const double> lp) -> std::optional<std::vector<double>> {
    std::vector<int> idx(static_cast<std::size_t>(layout.antennas), 0);
    for (int n = 0; n < layout.antennas; ++n) {
      for (int l = 1; l < layout.phases; ++l) {
        if (lp[static_cast<std::size_t>(layout.x(n, l))] >
            lp[static_cast<std::size_t>(layout.x(n, idx[static_cast<std::size_t>(n)]))]) {
          idx[static_cast<std::size_t>(n)] = l;
        }
      }
    }
    Solution sol = evaluate_phases(instance, idx);
    if (options.local_search) local_search(instance, sol);
    if (options.symmetry_break && !sol.phase_index.empty() && sol.phase_index[0] != 0) {
      // A global rotation by one grid step leaves every SNR unchanged.
      const int shift = sol.phase_index[0];
      for (int& p : sol.phase_index) p = (p - shift + layout.phases) % layout.phases;
      sol = evaluate_phases(instance, sol.phase_index);
    }
    return lift_assignment(layout, sol.phase_index, sol.admitted, sol.tau);
  };

  const MilpResult result = branch_and_bound(active, options, heuristic, observer);
  if (!result.has_incumbent()) {
    throw std::logic_error("branch and bound found no incumbent although mu = 0, tau = 0 is feasible");
  }
  Solution sol = reconstruct_solution(active, result.primal, instance);
  sol.stats.nodes = result.nodes;
  sol.stats.lp_iterations = result.lp_iterations;
  sol.stats.wall_ms = result.wall_ms;
  sol.stats.gap = std::max(0.0, result.bound - result.objective);
  sol.stats.status = result.status;
  return sol;
}

}  // namespace isac
