// Copyright 2026 The minkcsr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace minkcsr {

namespace {

bool parse_pair(const std::string& line, double& x, double& y) {
  const char* s = line.c_str();
  char* end = nullptr;
  x = std::strtod(s, &end);
  if (end == s) return false;
  while (*end == ' ' || *end == '\t') ++end;
  if (*end != ',' && *end != ';' && *end != ' ' && *end != '\t') return false;
  const char* s2 = end + 1;
  y = std::strtod(s2, &end);
  if (end == s2) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  return *end == '\0';
}

}  // namespace

PointPattern parse_pattern_csv(std::istream& in, const std::string& origin) {
  PointPattern pattern;
  std::string line;
  std::size_t lineno = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    double x = 0.0, y = 0.0;
    if (!parse_pair(line, x, y)) {
      if (first_data_line) {
        first_data_line = false;  // a single header line is tolerated
        continue;
      }
      throw_invalid(origin + ":" + std::to_string(lineno) +
                    ": expected 'x,y' with numeric fields, got '" + line + "'");
    }
    first_data_line = false;
    if (std::isnan(x) || std::isnan(y) || !(x >= 0.0 && x <= 1.0) ||
        !(y >= 0.0 && y <= 1.0)) {
      throw_invalid(origin + ":" + std::to_string(lineno) +
                    ": coordinates must lie in [0,1]x[0,1]");
    }
    pattern.push_back(x, y);
  }
  return pattern;
}

PointPattern read_pattern_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_invalid("cannot open '" + path + "' for reading");
  return parse_pattern_csv(in, path);
}

void write_pattern_csv(const PointPattern& pattern, std::ostream& out) {
  out << "x,y\n";
  out.precision(17);
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    out << pattern.x[i] << ',' << pattern.y[i] << '\n';
  }
}

void write_pattern_csv(const PointPattern& pattern, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw_invalid("cannot open '" + path + "' for writing");
  write_pattern_csv(pattern, out);
}

}  // namespace minkcsr
