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

#include "isac/mps.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace isac {
namespace {

constexpr char kObjRow[] = "obj";
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

char sense_code(RowSense sense) {
  switch (sense) {
    case RowSense::kLessEqual: return 'L';
    case RowSense::kEqual: return 'E';
    case RowSense::kGreaterEqual: return 'G';
  }
  return 'E';
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_number(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw MpsParseError(line, "bad number '" + tok + "'");
  }
}

}  // namespace

std::string export_mps(const MilpModel& model) {
  std::ostringstream out;
  out << "NAME " << model.name << "\n";
  out << "OBJSENSE\n    " << (model.maximize ? "MAX" : "MIN") << "\n";
  out << "ROWS\n N  " << kObjRow << "\n";
  for (const Row& row : model.rows) out << " " << sense_code(row.sense) << "  " << row.name << "\n";

  // Transpose the row-wise storage once, keeping row order within a column.
  std::vector<std::vector<std::pair<int, double>>> columns(model.variables.size());
  for (std::size_t i = 0; i < model.rows.size(); ++i) {
    const Row& row = model.rows[i];
    for (std::size_t k = 0; k < row.index.size(); ++k) {
      columns[static_cast<std::size_t>(row.index[k])].emplace_back(static_cast<int>(i), row.value[k]);
    }
  }

  out << "COLUMNS\n";
  bool in_int_block = false;
  int marker = 0;
  for (std::size_t j = 0; j < model.variables.size(); ++j) {
    const Variable& var = model.variables[j];
    if (var.integral != in_int_block) {
      out << "    MARKER" << marker++ << " 'MARKER' " << (var.integral ? "'INTORG'" : "'INTEND'")
          << "\n";
      in_int_block = var.integral;
    }
    const bool has_cost = model.objective[j] != 0.0;
    if (has_cost || columns[j].empty()) {
      out << "    " << var.name << " " << kObjRow << " " << num(model.objective[j]) << "\n";
    }
    for (const auto& [row, value] : columns[j]) {
      out << "    " << var.name << " " << model.rows[static_cast<std::size_t>(row)].name << " "
          << num(value) << "\n";
    }
  }
  if (in_int_block) out << "    MARKER" << marker++ << " 'MARKER' 'INTEND'\n";

  out << "RHS\n";
  for (const Row& row : model.rows) {
    if (row.rhs != 0.0) out << "    RHS " << row.name << " " << num(row.rhs) << "\n";
  }

  out << "BOUNDS\n";
  for (const Variable& var : model.variables) {
    if (var.integral && var.lower == 0.0 && var.upper == 1.0) {
      out << " BV BND " << var.name << "\n";
      continue;
    }
    if (var.lower == var.upper) {
      out << " FX BND " << var.name << " " << num(var.lower) << "\n";
      continue;
    }
    if (var.lower == -kInf && var.upper == kInf) {
      out << " FR BND " << var.name << "\n";
      continue;
    }
    if (var.lower == -kInf) {
      out << " MI BND " << var.name << "\n";
    } else if (var.lower != 0.0) {
      out << " LO BND " << var.name << " " << num(var.lower) << "\n";
    }
    if (var.upper != kInf) out << " UP BND " << var.name << " " << num(var.upper) << "\n";
  }
  out << "ENDATA\n";
  return out.str();
}

void write_mps(const MilpModel& model, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
  file << export_mps(model);
  if (!file) throw std::runtime_error("write failed for " + path.string());
}

MilpModel parse_mps(std::string_view text) {
  enum class Section { kNone, kObjSense, kRows, kColumns, kRhs, kBounds, kEnd };
  MilpModel model;
  model.maximize = false;
  Section section = Section::kNone;
  std::unordered_map<std::string, int> row_id;
  std::unordered_map<std::string, int> col_id;
  std::string objective_row;
  bool integer_block = false;

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '*') continue;
    const auto tok = split(line);
    if (tok.empty()) continue;
    const bool header = !std::isspace(static_cast<unsigned char>(line[0]));
    if (header) {
      const std::string& key = tok[0];
      if (key == "NAME") {
        model.name = tok.size() > 1 ? tok[1] : "";
      } else if (key == "OBJSENSE") {
        section = Section::kObjSense;
        if (tok.size() > 1) model.maximize = tok[1] == "MAX" || tok[1] == "MAXIMIZE";
      } else if (key == "ROWS") {
        section = Section::kRows;
      } else if (key == "COLUMNS") {
        section = Section::kColumns;
      } else if (key == "RHS") {
        section = Section::kRhs;
      } else if (key == "BOUNDS") {
        section = Section::kBounds;
      } else if (key == "ENDATA") {
        section = Section::kEnd;
        break;
      } else {
        throw MpsParseError(line_no, "unknown section '" + key + "'");
      }
      continue;
    }

    switch (section) {
      case Section::kObjSense:
        model.maximize = tok[0] == "MAX" || tok[0] == "MAXIMIZE";
        break;
      case Section::kRows: {
        if (tok.size() != 2) throw MpsParseError(line_no, "ROWS entry needs type and name");
        const std::string& type = tok[0];
        if (type == "N") {
          if (objective_row.empty()) objective_row = tok[1];
          break;
        }
        Row row;
        row.name = tok[1];
        if (type == "L") row.sense = RowSense::kLessEqual;
        else if (type == "G") row.sense = RowSense::kGreaterEqual;
        else if (type == "E") row.sense = RowSense::kEqual;
        else throw MpsParseError(line_no, "bad row type '" + type + "'");
        row_id[row.name] = model.row_count();
        model.rows.push_back(std::move(row));
        break;
      }
      case Section::kColumns: {
        if (tok.size() >= 3 && tok[1] == "'MARKER'") {
          if (tok[2] == "'INTORG'") integer_block = true;
          else if (tok[2] == "'INTEND'") integer_block = false;
          else throw MpsParseError(line_no, "bad marker");
          break;
        }
        if (tok.size() != 3 && tok.size() != 5) throw MpsParseError(line_no, "bad COLUMNS entry");
        auto it = col_id.find(tok[0]);
        if (it == col_id.end()) {
          it = col_id.emplace(tok[0], model.add_variable(tok[0], 0.0, kInf, integer_block)).first;
        }
        const int col = it->second;
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          const double v = parse_number(tok[k + 1], line_no);
          if (tok[k] == objective_row) {
            model.objective[static_cast<std::size_t>(col)] = v;
            continue;
          }
          auto r = row_id.find(tok[k]);
          if (r == row_id.end()) throw MpsParseError(line_no, "unknown row '" + tok[k] + "'");
          Row& row = model.rows[static_cast<std::size_t>(r->second)];
          row.index.push_back(col);
          row.value.push_back(v);
        }
        break;
      }
      case Section::kRhs: {
        if (tok.size() != 3 && tok.size() != 5) throw MpsParseError(line_no, "bad RHS entry");
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          if (tok[k] == objective_row) continue;
          auto r = row_id.find(tok[k]);
          if (r == row_id.end()) throw MpsParseError(line_no, "unknown row '" + tok[k] + "'");
          model.rows[static_cast<std::size_t>(r->second)].rhs = parse_number(tok[k + 1], line_no);
        }
        break;
      }
      case Section::kBounds: {
        if (tok.size() < 3) throw MpsParseError(line_no, "bad BOUNDS entry");
        auto c = col_id.find(tok[2]);
        if (c == col_id.end()) throw MpsParseError(line_no, "unknown column '" + tok[2] + "'");
        Variable& var = model.variables[static_cast<std::size_t>(c->second)];
        const std::string& type = tok[0];
        auto value = [&]() {
          if (tok.size() < 4) throw MpsParseError(line_no, type + " bound needs a value");
          return parse_number(tok[3], line_no);
        };
        if (type == "UP") var.upper = value();
        else if (type == "LO") var.lower = value();
        else if (type == "FX") var.lower = var.upper = value();
        else if (type == "MI") var.lower = -kInf;
        else if (type == "PL") var.upper = kInf;
        else if (type == "FR") { var.lower = -kInf; var.upper = kInf; }
        else if (type == "BV") { var.lower = 0.0; var.upper = 1.0; var.integral = true; }
        else throw MpsParseError(line_no, "unsupported bound type '" + type + "'");
        break;
      }
      default:
        throw MpsParseError(line_no, "data line outside of a section");
    }
  }
  if (section != Section::kEnd) throw MpsParseError(line_no, "missing ENDATA");
  return model;
}

}  // namespace isac
