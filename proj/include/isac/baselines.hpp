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

// Reference methods the exact solver is compared against:
//
//   bl2   conservative linear SNR conditions Re(g^H w) >= sqrt(Gamma) solved
//         as two lexicographic MILPs (admission first, then the sensing floor)
//   bl3   successive convex approximation over continuous w with polygonal
//         modulus cuts, then phase projection, random repair and user dropping
//   rand  best of uniformly random phase tuples
//
// Every reported Solution satisfies the original SNR constraints.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isac/bnb.hpp"
#include "isac/instance.hpp"

namespace isac {

struct BaselineReport {
  std::string method;
  Solution solution;
  int iterations = 0;     // MILP stages, SCA iterations, or trials
  long trials_used = 0;   // random candidates evaluated
  bool repaired = false;  // a random repair produced the reported phases
  // Objective of every SCA subproblem, in solve order (bl3 only).
  std::vector<double> objective_trace;
};

struct Bl2Options {
  // false: one MILP with weights 1 on admission and 1 / (4 sqrt(tau_max)) on
  // the sensing amplitude instead of two lexicographic stages.
  bool lexicographic = true;
  BnbOptions bnb;
};

BaselineReport bl2_inner_approx(const ProblemInstance& instance, const Bl2Options& options = {});

struct Bl3Options {
  int max_iters = 50;
  double tol = 1e-4;
  long trials = 10000;
  int polygon_sides = 16;
  std::uint64_t seed = 1;
};

// Value of the first-order minorant 2 Re(w0^H M w) - w0^H M w0 at w.
double sca_minorant(const cmat& m, const cvec& w0, const cvec& w);

BaselineReport bl3_sca(const ProblemInstance& instance, const Bl3Options& options = {});

// Phase tuple of trial `trial` in the stream defined by `seed`.
std::vector<int> random_phase_tuple(const ProblemInstance& instance, std::uint64_t seed,
                                    long trial);

BaselineReport rand_baseline(const ProblemInstance& instance, long trials = 10000,
                             std::uint64_t seed = 1);

}  // namespace isac
