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

#include "isac/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "isac/lp.hpp"

namespace isac {
namespace {

using Clock = std::chrono::steady_clock;

double since_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string indexed(const char* prefix, int a, int b = -1) {
  std::string out = prefix + std::to_string(a);
  if (b >= 0) out += "_" + std::to_string(b);
  return out;
}

// Coefficients of Re(f^H w) in the binaries x[n][l], w_n = sum_l s_l x[n][l].
void add_projection_terms(Row& row, const cvec& f, const PhaseSet& phases, int phase_count) {
  for (int n = 0; n < static_cast<int>(f.size()); ++n) {
    for (int l = 0; l < phase_count; ++l) {
      const double c = (std::conj(f(n)) * phases[l]).real();
      if (c == 0.0) continue;
      row.index.push_back(n * phase_count + l);
      row.value.push_back(c);
    }
  }
}

struct Bl2Columns {
  int first_mu = 0;
  int amplitude = 0;
};

MilpModel bl2_model(const ProblemInstance& instance, double mu_cost, double amplitude_cost,
                    Bl2Columns& cols) {
  const int phase_count = instance.phases.size();
  MilpModel model;
  model.name = "bl2";
  model.maximize = true;
  for (int n = 0; n < instance.n_antennas; ++n) {
    for (int l = 0; l < phase_count; ++l) model.add_variable(indexed("x", n, l), 0.0, 1.0, true, 0.0, 1);
  }
  cols.first_mu = model.column_count();
  for (int u = 0; u < instance.n_users; ++u) {
    model.add_variable(indexed("mu", u), 0.0, 1.0, true, mu_cost, 0);
  }
  const double reach = std::sqrt(instance.tau_max);
  cols.amplitude = model.add_variable("t", -reach, reach, false, amplitude_cost);

  for (int n = 0; n < instance.n_antennas; ++n) {
    Row row{indexed("D2_", n), {}, {}, RowSense::kEqual, 1.0};
    for (int l = 0; l < phase_count; ++l) {
      row.index.push_back(n * phase_count + l);
      row.value.push_back(1.0);
    }
    model.add_row(std::move(row));
  }
  const double root_threshold = std::sqrt(std::max(instance.snr_threshold, 0.0));
  for (int u = 0; u < instance.n_users; ++u) {
    Row row{indexed("CA_", u), {}, {}, RowSense::kGreaterEqual, 0.0};
    add_projection_terms(row, instance.user_factor[static_cast<std::size_t>(u)], instance.phases,
                         phase_count);
    row.index.push_back(cols.first_mu + u);
    row.value.push_back(-root_threshold);
    model.add_row(std::move(row));
  }
  for (std::size_t k = 0; k < instance.target_factor.size(); ++k) {
    Row row{indexed("SA_", static_cast<int>(k)), {}, {}, RowSense::kGreaterEqual, 0.0};
    add_projection_terms(row, instance.target_factor[k], instance.phases, phase_count);
    row.index.push_back(cols.amplitude);
    row.value.push_back(-1.0);
    model.add_row(std::move(row));
  }
  if (instance.couple_admission) {
    for (int u = 0; u + 1 < instance.n_users; ++u) {
      model.add_row({indexed("CPL_", u), {cols.first_mu + u, cols.first_mu + u + 1}, {1.0, -1.0},
                     RowSense::kEqual, 0.0});
    }
  }
  return model;
}

// Argmax phase per antenna from a binary primal.
std::vector<int> phases_from_primal(const ProblemInstance& instance, std::span<const double> primal) {
  const int phase_count = instance.phases.size();
  std::vector<int> idx(static_cast<std::size_t>(instance.n_antennas), 0);
  for (int n = 0; n < instance.n_antennas; ++n) {
    for (int l = 1; l < phase_count; ++l) {
      if (primal[static_cast<std::size_t>(n * phase_count + l)] >
          primal[static_cast<std::size_t>(n * phase_count + idx[static_cast<std::size_t>(n)])]) {
        idx[static_cast<std::size_t>(n)] = l;
      }
    }
  }
  return idx;
}

void merge_stats(SolveStats& into, const MilpResult& stage) {
  into.nodes += stage.nodes;
  into.lp_iterations += stage.lp_iterations;
  into.gap = std::max(into.gap, std::abs(stage.bound - stage.objective));
  if (stage.status != SolveStatus::kOptimal) into.status = stage.status;
}

// Users whose SNR under w misses the threshold.
std::vector<double> user_snrs(const ProblemInstance& instance, const cvec& w) {
  std::vector<double> out;
  for (const cmat& m : instance.user_snr) out.push_back(snr_com(w, m));
  return out;
}

double min_sensing(const ProblemInstance& instance, const cvec& w) {
  double out = instance.tau_max;
  for (const cmat& m : instance.target_snr) out = std::min(out, snr_sen(w, m));
  return out;
}

bool serves(const ProblemInstance& instance, const cvec& w, const std::vector<int>& users) {
  for (int u : users) {
    if (snr_com(w, instance.user_snr[static_cast<std::size_t>(u)]) < instance.snr_threshold) return false;
  }
  return true;
}

}  // namespace

BaselineReport bl2_inner_approx(const ProblemInstance& instance, const Bl2Options& options) {
  instance.validate();
  const auto start = Clock::now();
  BaselineReport report;
  report.method = "bl2";
  SolveStats stats;
  stats.status = SolveStatus::kOptimal;

  Bl2Columns cols;
  MilpResult final_stage;
  if (options.lexicographic) {
    MilpModel admission = bl2_model(instance, 1.0, 0.0, cols);
    const MilpResult first = branch_and_bound(admission, options.bnb);
    merge_stats(stats, first);
    MilpModel sensing = bl2_model(instance, 0.0, 1.0, cols);
    for (int u = 0; u < instance.n_users; ++u) {
      const double mu = first.has_incumbent()
                            ? std::round(first.primal[static_cast<std::size_t>(cols.first_mu + u)])
                            : 0.0;
      Variable& var = sensing.variables[static_cast<std::size_t>(cols.first_mu + u)];
      var.lower = var.upper = mu;
    }
    final_stage = branch_and_bound(sensing, options.bnb);
    report.iterations = 2;
  } else {
    const double weight = instance.tau_max > 0.0 ? 1.0 / (4.0 * std::sqrt(instance.tau_max)) : 0.0;
    MilpModel weighted = bl2_model(instance, 1.0, weight, cols);
    final_stage = branch_and_bound(weighted, options.bnb);
    report.iterations = 1;
  }
  merge_stats(stats, final_stage);

  Solution sol;
  if (final_stage.has_incumbent()) {
    sol.phase_index = phases_from_primal(instance, final_stage.primal);
    for (int u = 0; u < instance.n_users; ++u) {
      sol.admitted.push_back(
          static_cast<int>(std::round(final_stage.primal[static_cast<std::size_t>(cols.first_mu + u)])));
    }
    const double t = final_stage.primal[static_cast<std::size_t>(cols.amplitude)];
    const cvec w = beamformer(instance.phases, sol.phase_index);
    sol.tau = std::min(std::pow(std::max(t, 0.0), 2), std::max(0.0, min_sensing(instance, w)));
  } else {
    sol.phase_index.assign(static_cast<std::size_t>(instance.n_antennas), 0);
    sol.admitted.assign(static_cast<std::size_t>(instance.n_users), 0);
    sol.tau = 0.0;
  }
  finalize(instance, sol);
  if (feasibility_violation(instance, sol)) {
    // Round-off at the LP tolerance; fall back to users that truly qualify.
    const std::vector<double> snr = user_snrs(instance, sol.w);
    for (int u = 0; u < instance.n_users; ++u) {
      if (snr[static_cast<std::size_t>(u)] < instance.snr_threshold) sol.admitted[static_cast<std::size_t>(u)] = 0;
    }
    if (instance.couple_admission &&
        std::count(sol.admitted.begin(), sol.admitted.end(), 1) != instance.n_users) {
      std::fill(sol.admitted.begin(), sol.admitted.end(), 0);
    }
    finalize(instance, sol);
  }
  stats.wall_ms = since_ms(start);
  sol.stats = stats;
  report.solution = std::move(sol);
  return report;
}

double sca_minorant(const cmat& m, const cvec& w0, const cvec& w) {
  const cplx cross = w0.dot(m * w);  // w0^H M w
  return 2.0 * cross.real() - quadratic_form(w0, m);
}

namespace {

struct ScaOutcome {
  cvec w;
  int iterations = 0;
  std::vector<double> trace;  // objectives of the sensing-mode subproblems
};

// One SCA run for a fixed set of served users, starting from w.
ScaOutcome run_sca(const ProblemInstance& instance, const std::vector<int>& users, cvec w,
                   const Bl3Options& options) {
  const int n = instance.n_antennas;
  const double delta = instance.phases.magnitude();
  const bool need_threshold = instance.snr_threshold > 0.0 && !users.empty();
  double reach = 1.0;
  for (int u : users) {
    const double matched = std::pow(delta * instance.user_factor[static_cast<std::size_t>(u)].cwiseAbs().sum(), 2);
    reach = std::max(reach, matched / std::max(instance.snr_threshold, 1e-300));
  }

  ScaOutcome out;
  bool feasibility_mode = need_threshold && !serves(instance, w, users);
  double previous = -std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < options.max_iters; ++iter) {
    MilpModel lp;
    lp.name = "sca";
    lp.maximize = true;
    for (int k = 0; k < n; ++k) {
      lp.add_variable(indexed("re", k), -delta, delta, false);
      lp.add_variable(indexed("im", k), -delta, delta, false);
    }
    const int goal = feasibility_mode
                         ? lp.add_variable("z", -3.0 * reach, reach, false, 1.0)
                         : lp.add_variable("tau", -3.0 * instance.tau_max, instance.tau_max, false, 1.0);

    auto tangent_row = [&](const cmat& m, std::string name, double scale, double rhs_extra,
                           double goal_coef) {
      const cvec v = m * w;
      Row row{std::move(name), {}, {}, RowSense::kGreaterEqual, 0.0};
      for (int k = 0; k < n; ++k) {
        row.index.push_back(2 * k);
        row.value.push_back(2.0 * v(k).real() * scale);
        row.index.push_back(2 * k + 1);
        row.value.push_back(2.0 * v(k).imag() * scale);
      }
      if (goal_coef != 0.0) {
        row.index.push_back(goal);
        row.value.push_back(goal_coef);
      }
      row.rhs = quadratic_form(w, m) * scale + rhs_extra;
      lp.add_row(std::move(row));
    };
    for (int u : users) {
      const cmat& m = instance.user_snr[static_cast<std::size_t>(u)];
      if (feasibility_mode) {
        tangent_row(m, indexed("U_", u), 1.0 / instance.snr_threshold, 0.0, -1.0);
      } else {
        tangent_row(m, indexed("U_", u), 1.0, instance.snr_threshold, 0.0);
      }
    }
    if (!feasibility_mode) {
      for (std::size_t k = 0; k < instance.target_snr.size(); ++k) {
        tangent_row(instance.target_snr[k], indexed("S_", static_cast<int>(k)), 1.0, 0.0, -1.0);
      }
    }
    for (int k = 0; k < n; ++k) {
      for (int side = 0; side < options.polygon_sides; ++side) {
        const double phi = 2.0 * kPi * side / options.polygon_sides;
        lp.add_row({indexed("P_", k, side), {2 * k, 2 * k + 1}, {std::cos(phi), std::sin(phi)},
                    RowSense::kLessEqual, delta});
      }
    }

    const LpResult res = solve_lp(lp);
    ++out.iterations;
    if (res.status != LpStatus::kOptimal) break;
    cvec next(n);
    for (int k = 0; k < n; ++k) {
      next(k) = cplx(res.primal[static_cast<std::size_t>(2 * k)], res.primal[static_cast<std::size_t>(2 * k + 1)]);
    }
    w = next;
    if (feasibility_mode) {
      const double z = res.objective;
      if (z >= 1.0 || serves(instance, w, users)) {
        feasibility_mode = false;
        previous = -std::numeric_limits<double>::infinity();
        continue;
      }
      if (std::abs(z - previous) <= options.tol * std::max(1.0, std::abs(previous))) break;
      previous = z;
      continue;
    }
    out.trace.push_back(res.objective);
    if (std::abs(res.objective - previous) <= options.tol * std::max(1.0, std::abs(previous))) break;
    previous = res.objective;
  }
  out.w = w;
  return out;
}

std::vector<int> project(const ProblemInstance& instance, const cvec& w) {
  std::vector<int> idx(static_cast<std::size_t>(instance.n_antennas));
  for (int k = 0; k < instance.n_antennas; ++k) idx[static_cast<std::size_t>(k)] = instance.phases.nearest(w(k));
  return idx;
}

cvec initial_point(const ProblemInstance& instance, const std::vector<int>& users) {
  const double delta = instance.phases.magnitude();
  cvec dir = cvec::Zero(instance.n_antennas);
  for (int u : users) {
    const cvec& g = instance.user_factor[static_cast<std::size_t>(u)];
    if (g.norm() > 0.0) dir += g / g.norm();
  }
  if (dir.norm() == 0.0 && !instance.target_factor.empty()) {
    dir = instance.target_factor[instance.target_factor.size() / 2];
  }
  cvec w(instance.n_antennas);
  for (int k = 0; k < instance.n_antennas; ++k) {
    w(k) = std::abs(dir(k)) > 0.0 ? delta * dir(k) / std::abs(dir(k)) : cplx(delta, 0.0);
  }
  return w;
}

}  // namespace

BaselineReport bl3_sca(const ProblemInstance& instance, const Bl3Options& options) {
  instance.validate();
  const auto start = Clock::now();
  BaselineReport report;
  report.method = "bl3";
  const double delta = instance.phases.magnitude();
  const int phase_count = instance.phases.size();

  // Candidate users in decreasing order of their best achievable SNR.
  std::vector<std::pair<double, int>> ranked;
  for (int u = 0; u < instance.n_users; ++u) {
    const double matched = std::pow(delta * instance.user_factor[static_cast<std::size_t>(u)].cwiseAbs().sum(), 2);
    ranked.emplace_back(matched, u);
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<int> users;
  bool all_reachable = true;
  for (const auto& [matched, u] : ranked) {
    if (matched >= instance.snr_threshold) {
      users.push_back(u);
    } else {
      all_reachable = false;
    }
  }
  if (instance.couple_admission && !all_reachable) users.clear();

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, phase_count - 1);
  const double flip = 1.0 / std::max(instance.n_antennas, 1);

  cvec w = initial_point(instance, users);
  std::vector<int> idx;
  for (;;) {
    ScaOutcome sca = run_sca(instance, users, w, options);
    report.iterations += sca.iterations;
    report.objective_trace = std::move(sca.trace);
    w = sca.w;
    idx = project(instance, w);
    cvec projected = beamformer(instance.phases, idx);
    if (serves(instance, projected, users)) break;

    std::vector<int> best;
    double best_floor = -1.0;
    for (long trial = 0; trial < options.trials; ++trial) {
      std::vector<int> cand = idx;
      for (int& p : cand) {
        if (coin(rng) < flip) p = pick(rng);
      }
      const cvec wc = beamformer(instance.phases, cand);
      if (!serves(instance, wc, users)) continue;
      const double floor = min_sensing(instance, wc);
      if (floor > best_floor) {
        best_floor = floor;
        best = std::move(cand);
      }
    }
    report.trials_used += options.trials;
    if (!best.empty()) {
      idx = std::move(best);
      report.repaired = true;
      break;
    }
    if (users.empty()) break;
    if (instance.couple_admission) {
      users.clear();
      continue;
    }
    // Drop the served user with the weakest SNR under the projected phases.
    const std::vector<double> snr = user_snrs(instance, projected);
    auto weakest = std::min_element(users.begin(), users.end(), [&](int a, int b) {
      return snr[static_cast<std::size_t>(a)] < snr[static_cast<std::size_t>(b)];
    });
    users.erase(weakest);
  }

  Solution sol = evaluate_phases(instance, idx);
  sol.stats.status = SolveStatus::kHeuristic;
  sol.stats.lp_iterations = report.iterations;
  sol.stats.wall_ms = since_ms(start);
  report.solution = std::move(sol);
  return report;
}

std::vector<int> random_phase_tuple(const ProblemInstance& instance, std::uint64_t seed, long trial) {
  const auto t = static_cast<std::uint64_t>(trial);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<int> pick(0, instance.phases.size() - 1);
  std::vector<int> idx(static_cast<std::size_t>(instance.n_antennas));
  for (int& p : idx) p = pick(rng);
  return idx;
}

BaselineReport rand_baseline(const ProblemInstance& instance, long trials, std::uint64_t seed) {
  instance.validate();
  if (trials < 1) throw std::invalid_argument("rand_baseline: trials must be at least 1");
  const auto start = Clock::now();
  BaselineReport report;
  report.method = "rand";
  Solution best = evaluate_phases(instance, random_phase_tuple(instance, seed, 0));
  for (long trial = 1; trial < trials; ++trial) {
    Solution cand = evaluate_phases(instance, random_phase_tuple(instance, seed, trial));
    if (cand.f > best.f) best = std::move(cand);
  }
  best.stats.status = SolveStatus::kHeuristic;
  best.stats.wall_ms = since_ms(start);
  report.solution = std::move(best);
  report.iterations = static_cast<int>(std::min<long>(trials, std::numeric_limits<int>::max()));
  report.trials_used = trials;
  return report;
}

}  // namespace isac
