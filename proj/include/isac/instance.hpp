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

// Problem data for joint admission control and discrete-phase multicast
// beamforming, plus evaluation of SNRs, objectives and beampatterns for any
// candidate beamformer.

#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isac/channel.hpp"

namespace isac {

// Constant-modulus phase alphabet. Symbols are ordered; the uniform grid has
// symbols[l] = magnitude * exp(j 2 pi l / L).
class PhaseSet {
 public:
  static PhaseSet uniform(int bits, double magnitude);
  // Arbitrary alphabet given by its phases in degrees.
  static PhaseSet from_degrees(const std::vector<double>& phases_deg, double magnitude);

  double magnitude() const { return magnitude_; }
  int size() const { return static_cast<int>(symbols_.size()); }
  // log2(size()); throws std::logic_error if the size is not a power of two.
  int bits() const;
  const std::vector<cplx>& symbols() const { return symbols_; }
  const cplx& operator[](int l) const { return symbols_[static_cast<std::size_t>(l)]; }

  // True when symbols[l] == symbols[0] * exp(j 2 pi l / L) for every l, i.e.
  // the alphabet is closed under a global rotation by one step.
  bool is_uniform() const;

  // Index of the symbol closest in phase to `value`.
  int nearest(cplx value) const;

 private:
  PhaseSet(double magnitude, std::vector<cplx> symbols)
      : magnitude_(magnitude), symbols_(std::move(symbols)) {}

  double magnitude_;
  std::vector<cplx> symbols_;
};

struct HierarchyWeights {
  double rho_com = 1.0;
  double rho_sen = 0.0;
};

// rho_com = 1, rho_sen = sigma_sen^2 / (2 alpha N P_tx); linear units.
HierarchyWeights hierarchy_weights(double noise_sen_mw, double alpha, int n_antennas,
                                   double tx_power_mw);

// Cauchy-Schwarz bound alpha N P_tx / sigma_sen^2 on every sensing SNR.
double tau_upper_bound(double alpha, int n_antennas, double tx_power_mw, double noise_sen_mw);

struct ProblemInstance {
  int n_antennas = 0;
  int n_users = 0;
  // H~_u = g_u g_u^H with g_u = h_u / sigma_com.
  std::vector<cmat> user_snr;
  std::vector<cvec> user_factor;
  // G~(theta) = t t^H with t = sqrt(alpha) a(theta) / sigma_sen.
  std::vector<cmat> target_snr;
  std::vector<cvec> target_factor;
  std::vector<double> grid_deg;
  double snr_threshold = 0.0;
  double rho_com = 1.0;
  double rho_sen = 0.0;
  PhaseSet phases = PhaseSet::uniform(0, 0.0);
  double tau_max = 0.0;
  // All users admitted together or not at all.
  bool couple_admission = false;

  // Physical constants kept for beampatterns.
  double alpha = 0.0;
  double noise_sen_mw = 1.0;
  double tx_power_mw = 0.0;

  void validate() const;
};

struct InstanceOptions {
  int phase_bits = 3;
  // Overrides the uniform grid when non-empty.
  std::vector<double> phases_deg;
  double snr_threshold = 30.0;
  bool snr_threshold_db = false;
  bool couple_admission = false;
  std::optional<double> rho_com;
  std::optional<double> rho_sen;
};

ProblemInstance make_instance(const GeometryConfig& config, const ChannelSet& channels,
                              const InstanceOptions& options);
ProblemInstance make_instance(const GeometryConfig& config, const InstanceOptions& options);

// Real part of w^H M w; throws std::invalid_argument on dimension mismatch.
double quadratic_form(const cvec& w, const cmat& m);
double snr_com(const cvec& w, const cmat& user_snr);
double snr_sen(const cvec& w, const cmat& target_snr);

struct ObjectiveValue {
  double f = 0.0;
  double f_com = 0.0;
  double f_sen = 0.0;
};

ObjectiveValue objective(std::span<const int> admitted, double tau, double rho_com,
                         double rho_sen);

enum class SolveStatus { kOptimal, kNodeLimit, kTimeLimit, kInfeasible, kHeuristic };

std::string to_string(SolveStatus status);

struct SolveStats {
  long nodes = 0;
  long lp_iterations = 0;
  double wall_ms = 0.0;
  double gap = 0.0;
  SolveStatus status = SolveStatus::kHeuristic;
};

struct Solution {
  std::vector<int> phase_index;
  std::vector<int> admitted;  // mu, 0/1 per user
  double tau = 0.0;
  cvec w;
  double f = 0.0;
  double f_com = 0.0;
  double f_sen = 0.0;
  SolveStats stats;
};

cvec beamformer(const PhaseSet& phases, std::span<const int> phase_index);

// Fills w and the objective breakdown from phase_index, admitted and tau.
void finalize(const ProblemInstance& instance, Solution& solution);

// Hierarchical order: more admitted users first, then larger sensing floor.
std::partial_ordering lex_compare(const Solution& a, const Solution& b);

// Checks every constraint of the problem; relative tolerance on the SNR rows.
// Returns an explanation of the first violated constraint, or nullopt.
std::optional<std::string> feasibility_violation(const ProblemInstance& instance,
                                                 const Solution& solution,
                                                 double rel_tol = 1e-6);

// Sensing SNR of w toward each angle in `angles_deg`.
std::vector<double> beampattern(const cvec& w, std::span<const double> angles_deg,
                                double alpha, double noise_sen_mw, int n_antennas);

}  // namespace isac
