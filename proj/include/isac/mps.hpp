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

// Free-format MPS export for cross-checking models with external MILP solvers.
//
// Layout of the written file: NAME, OBJSENSE, ROWS (objective row "obj"
// first), COLUMNS in column order with contiguous integral columns wrapped
// in INTORG/INTEND markers, RHS (nonzero entries only), BOUNDS, ENDATA.
// Numbers are printed with 17 significant digits so a parse-back recovers
// every coefficient bit for bit.

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "isac/milp_model.hpp"

namespace isac {

class MpsParseError : public std::runtime_error {
 public:
  MpsParseError(int line, const std::string& what)
      : std::runtime_error("MPS line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

std::string export_mps(const MilpModel& model);

// Throws std::runtime_error on I/O failure.
void write_mps(const MilpModel& model, const std::filesystem::path& path);

// Reader for the subset of free MPS that export_mps produces (plus
// two-pair COLUMNS/RHS lines and the MI/PL/FR bound types). It is meant for
// round-trip checks, not as a general-purpose parser.
MilpModel parse_mps(std::string_view text);

}  // namespace isac
