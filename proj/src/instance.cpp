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

#include "isac/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace isac {

PhaseSet PhaseSet::uniform(int bits, double magnitude) {
  if (bits < 0 || bits > 20) throw std::invalid_argument("phase bits must be in [0, 20]");
  const int count = 1 << bits;
  std::vector<cplx> symbols;
  symbols.reserve(static_cast<std::size_t>(count));
  for (int l = 0; l < count; ++l) {
    symbols.push_back(std::polar(magnitude, 2.0 * kPi * l / count));
  }
  return PhaseSet(magnitude, std::move(symbols));
}

PhaseSet PhaseSet::from_degrees(const std::vector<double>& phases_deg, double magnitude) {
  if (phases_deg.empty()) throw std::invalid_argument("phase alphabet must be non-empty");
  std::vector<cplx> symbols;
  for (double deg : phases_deg) symbols.push_back(std::polar(magnitude, deg * kPi / 180.0));
  return PhaseSet(magnitude, std::move(symbols));
}

int PhaseSet::bits() const {
  const int count = size();
  int bits = 0;
  while ((1 << bits) < count) ++bits;
  if ((1 << bits) != count) throw std::logic_error("phase count is not a power of two");
  return bits;
}

bool PhaseSet::is_uniform() const {
  const int count = size();
  if (count == 0) return false;
  const double tol = 1e-12 * std::max(1.0, magnitude_);
  for (int l = 0; l < count; ++l) {
    const cplx expected = symbols_[0] * std::polar(1.0, 2.0 * kPi * l / count);
    if (std::abs(expected - symbols_[static_cast<std::size_t>(l)]) > tol) return false;
  }
  return true;
}

int PhaseSet::nearest(cplx value) const {
  int best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int l = 0; l < size(); ++l) {
    // Compare on the unit circle so the modulus of `value` is irrelevant.
    const double diff = std::abs(std::remainder(std::arg(value) - std::arg((*this)[l]), 2.0 * kPi));
    if (diff < best_dist - 1e-15) {
      best_dist = diff;
      best = l;
    }
  }
  return best;
}

HierarchyWeights hierarchy_weights(double noise_sen_mw, double alpha, int n_antennas,
                                   double tx_power_mw) {
  if (!(noise_sen_mw > 0.0) || !(alpha > 0.0) || n_antennas <= 0 || !(tx_power_mw > 0.0)) {
    throw std::invalid_argument("hierarchy_weights: inputs must be positive");
  }
  return {1.0, noise_sen_mw / (2.0 * alpha * n_antennas * tx_power_mw)};
}

double tau_upper_bound(double alpha, int n_antennas, double tx_power_mw, double noise_sen_mw) {
  return alpha * n_antennas * tx_power_mw / noise_sen_mw;
}

void ProblemInstance::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("instance: " + what); };
  if (n_antennas < 1) fail("n_antennas must be >= 1");
  if (n_users < 0) fail("n_users must be >= 0");
  if (user_snr.size() != static_cast<std::size_t>(n_users) ||
      user_factor.size() != static_cast<std::size_t>(n_users)) {
    fail("one SNR matrix and factor per user required");
  }
  if (target_snr.empty() || target_snr.size() != grid_deg.size() ||
      target_factor.size() != grid_deg.size()) {
    fail("one target matrix and factor per grid angle required");
  }
  auto check_matrix = [&](const cmat& m) {
    if (m.rows() != n_antennas || m.cols() != n_antennas) fail("matrix dimension mismatch");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale) fail("matrix not Hermitian");
  };
  for (const auto& m : user_snr) check_matrix(m);
  for (const auto& m : target_snr) check_matrix(m);
  if (phases.size() < 1) fail("empty phase alphabet");
  if (!(rho_com > 0.0) || !(rho_sen >= 0.0)) fail("weights must be rho_com > 0, rho_sen >= 0");
  if (!(tau_max > 0.0) || !std::isfinite(tau_max)) fail("tau_max must be positive and finite");
  if (!(snr_threshold >= 0.0)) fail("snr_threshold must be >= 0");
}

ProblemInstance make_instance(const GeometryConfig& config, const ChannelSet& channels,
                              const InstanceOptions& options) {
  config.validate();
  ProblemInstance inst;
  inst.n_antennas = config.n_antennas;
  inst.n_users = config.n_users;
  inst.tx_power_mw = dbm_to_mw(config.tx_power_dbm);
  inst.noise_sen_mw = dbm_to_mw(config.noise_sen_dbm);
  inst.alpha = channels.alpha;
  const double noise_com_mw = dbm_to_mw(config.noise_com_dbm);
  const double magnitude = std::sqrt(inst.tx_power_mw / config.n_antennas);
  inst.phases = options.phases_deg.empty() ? PhaseSet::uniform(options.phase_bits, magnitude)
                                           : PhaseSet::from_degrees(options.phases_deg, magnitude);

  for (const cvec& h : channels.user_channels) {
    cvec g = h / std::sqrt(noise_com_mw);
    inst.user_snr.push_back(g * g.adjoint());
    inst.user_factor.push_back(std::move(g));
  }
  inst.grid_deg = channels.grid_deg;
  const double target_scale = std::sqrt(channels.alpha / inst.noise_sen_mw);
  for (std::size_t k = 0; k < channels.grid_deg.size(); ++k) {
    inst.target_factor.push_back(target_scale * steering_vector(channels.grid_deg[k], config.n_antennas));
    inst.target_snr.push_back(channels.target_matrices[k]);
  }

  inst.snr_threshold = options.snr_threshold_db ? std::pow(10.0, options.snr_threshold / 10.0)
                                                : options.snr_threshold;
  inst.couple_admission = options.couple_admission;
  inst.tau_max = tau_upper_bound(channels.alpha, config.n_antennas, inst.tx_power_mw,
                                 inst.noise_sen_mw);
  const HierarchyWeights derived = hierarchy_weights(inst.noise_sen_mw, channels.alpha,
                                                     config.n_antennas, inst.tx_power_mw);
  inst.rho_com = options.rho_com.value_or(derived.rho_com);
  inst.rho_sen = options.rho_sen.value_or(derived.rho_sen);
  inst.validate();
  return inst;
}

ProblemInstance make_instance(const GeometryConfig& config, const InstanceOptions& options) {
  return make_instance(config, generate_channels(config), options);
}

double quadratic_form(const cvec& w, const cmat& m) {
  if (m.rows() != w.size() || m.cols() != w.size()) {
    throw std::invalid_argument("quadratic_form: dimension mismatch");
  }
  return w.dot(m * w).real();  // dot() conjugates its left operand
}

double snr_com(const cvec& w, const cmat& user_snr) { return quadratic_form(w, user_snr); }

double snr_sen(const cvec& w, const cmat& target_snr) { return quadratic_form(w, target_snr); }

ObjectiveValue objective(std::span<const int> admitted, double tau, double rho_com,
                         double rho_sen) {
  ObjectiveValue v;
  v.f_com = std::accumulate(admitted.begin(), admitted.end(), 0.0);
  v.f_sen = tau;
  v.f = rho_com * v.f_com + rho_sen * v.f_sen;
  return v;
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kNodeLimit: return "node_limit";
    case SolveStatus::kTimeLimit: return "time_limit";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kHeuristic: return "heuristic";
  }
  return "unknown";
}

cvec beamformer(const PhaseSet& phases, std::span<const int> phase_index) {
  cvec w(static_cast<Eigen::Index>(phase_index.size()));
  for (std::size_t n = 0; n < phase_index.size(); ++n) {
    w(static_cast<Eigen::Index>(n)) = phases[phase_index[n]];
  }
  return w;
}

void finalize(const ProblemInstance& instance, Solution& solution) {
  solution.w = beamformer(instance.phases, solution.phase_index);
  const ObjectiveValue v =
      objective(solution.admitted, solution.tau, instance.rho_com, instance.rho_sen);
  solution.f = v.f;
  solution.f_com = v.f_com;
  solution.f_sen = v.f_sen;
}

std::partial_ordering lex_compare(const Solution& a, const Solution& b) {
  if (auto c = a.f_com <=> b.f_com; c != 0) return c;
  return a.f_sen <=> b.f_sen;
}

std::optional<std::string> feasibility_violation(const ProblemInstance& instance,
                                                 const Solution& solution, double rel_tol) {
  std::ostringstream why;
  const auto n = static_cast<std::size_t>(instance.n_antennas);
  if (solution.phase_index.size() != n || static_cast<std::size_t>(solution.w.size()) != n) {
    return "beamformer has wrong length";
  }
  for (std::size_t i = 0; i < n; ++i) {
    const int l = solution.phase_index[i];
    if (l < 0 || l >= instance.phases.size()) return "phase index out of range";
    if (std::abs(solution.w(static_cast<Eigen::Index>(i)) - instance.phases[l]) >
        1e-12 * std::max(1.0, instance.phases.magnitude())) {
      return "w does not match the phase indices";
    }
  }
  if (solution.admitted.size() != static_cast<std::size_t>(instance.n_users)) {
    return "admission vector has wrong length";
  }
  for (int mu : solution.admitted) {
    if (mu != 0 && mu != 1) return "admission entries must be binary";
  }
  if (instance.couple_admission && !solution.admitted.empty() &&
      std::adjacent_find(solution.admitted.begin(), solution.admitted.end(),
                         std::not_equal_to<>()) != solution.admitted.end()) {
    return "coupled admission requires all users admitted together";
  }
  if (!(solution.tau >= 0.0)) return "tau must be nonnegative";
  for (int u = 0; u < instance.n_users; ++u) {
    if (!solution.admitted[static_cast<std::size_t>(u)]) continue;
    const double snr = snr_com(solution.w, instance.user_snr[static_cast<std::size_t>(u)]);
    if (snr < instance.snr_threshold * (1.0 - rel_tol) - 1e-12) {
      why << "user " << u << " SNR " << snr << " below threshold " << instance.snr_threshold;
      return why.str();
    }
  }
  for (std::size_t k = 0; k < instance.target_snr.size(); ++k) {
    const double snr = snr_sen(solution.w, instance.target_snr[k]);
    if (snr < solution.tau * (1.0 - rel_tol) - 1e-12) {
      why << "sensing SNR " << snr << " at " << instance.grid_deg[k] << " deg below tau "
          << solution.tau;
      return why.str();
    }
  }
  return std::nullopt;
}

std::vector<double> beampattern(const cvec& w, std::span<const double> angles_deg, double alpha,
                                double noise_sen_mw, int n_antennas) {
  if (angles_deg.empty()) throw std::invalid_argument("beampattern: no angle samples");
  if (w.size() != n_antennas) throw std::invalid_argument("beampattern: dimension mismatch");
  std::vector<double> pattern;
  pattern.reserve(angles_deg.size());
  for (double angle : angles_deg) {
    const cplx proj = steering_vector(angle, n_antennas).dot(w);
    pattern.push_back(alpha / noise_sen_mw * std::norm(proj));
  }
  return pattern;
}

}  // namespace isac
