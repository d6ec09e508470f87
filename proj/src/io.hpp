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

#pragma once

#include <iosfwd>
#include <string>

#include "grid.hpp"

namespace minkcsr {

// One "x,y" pair per line, an optional single header line, decimal-point
// notation. Rejects NaN and out-of-range coordinates with file/line context.
PointPattern read_pattern_csv(const std::string& path);
PointPattern parse_pattern_csv(std::istream& in, const std::string& origin);

void write_pattern_csv(const PointPattern& pattern, const std::string& path);
void write_pattern_csv(const PointPattern& pattern, std::ostream& out);

}  // namespace minkcsr
