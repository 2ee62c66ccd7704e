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

#include <chrono>
#include <cmath>
#include <cstdio>

#include "isac/bnb.hpp"

namespace isac {
namespace {

std::string guard_message(double candidates) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "exhaustive search needs %.6g candidates", candidates);
  return buf;
}

}  // namespace

GuardExceeded::GuardExceeded(double candidates)
    : std::runtime_error(guard_message(candidates)), candidates_(candidates) {}

Solution exhaustive_search(const ProblemInstance& instance, double max_candidates) {
  instance.validate();
  const auto start = std::chrono::steady_clock::now();
  const int phases = instance.phases.size();
  const double candidates = std::pow(static_cast<double>(phases), instance.n_antennas);
  if (candidates > max_candidates) throw GuardExceeded(candidates);

  std::vector<int> idx(static_cast<std::size_t>(instance.n_antennas), 0);
  Solution best = evaluate_phases(instance, idx);
  long evaluated = 1;
  for (;;) {
    // Odometer with the last antenna fastest.
    int n = instance.n_antennas - 1;
    while (n >= 0 && ++idx[static_cast<std::size_t>(n)] == phases) idx[static_cast<std::size_t>(n--)] = 0;
    if (n < 0) break;
    Solution candidate = evaluate_phases(instance, idx);
    ++evaluated;
    if (candidate.f > best.f) best = std::move(candidate);
  }
  best.stats.nodes = evaluated;
  best.stats.status = SolveStatus::kOptimal;
  best.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return best;
}

}  // namespace isac
