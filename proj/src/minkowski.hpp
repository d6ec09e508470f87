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

#include <cstdint>

#include "grid.hpp"

namespace minkcsr {

// One 2x2 pixel configuration, indexed 1..16. The index encodes the four
// cells as bits (top-left, top-right, bottom-left, bottom-right), most
// significant first, plus one.
struct WindowConfig {
  int index;  // 1..16
};

// Per-configuration contributions: area in cell units (quarter cells per
// window), perimeter in black-white edge units, Euler score in quarters.
struct LookupEntry {
  double area;
  double perimeter;
  double euler;
};

// The 16-entry configuration table. Singles score (1/4, 1, 1/4), adjacent
// pairs (1/2, 1, 0), diagonal pairs (1/2, 2, -1/2), triples (3/4, 1, -1/4),
// and the full/empty windows (1,0,0) / (0,0,0).
LookupEntry lookup(WindowConfig config);

// Scaled functionals of a bordered image (unit of length = bin edge,
// everything divided once by m).
struct MinkowskiTriple {
  double area = 0.0;
  double perimeter = 0.0;
  double euler = 0.0;
};

// Exact integer accumulators produced by one pass of the 2x2 window over
// all (m+1)^2 positions of the bordered image.
struct FunctionalCounts {
  std::int64_t area_quarters = 0;    // 4 * black cell count
  std::int64_t perimeter_edges = 0;  // black-white 4-neighbor adjacencies
  std::int64_t euler_quarters = 0;   // 4m * scaled Euler characteristic

  MinkowskiTriple scaled(int m) const;
};

FunctionalCounts scan_image(const BinaryImage& image);

MinkowskiTriple functionals(const BinaryImage& image);

// Independent perimeter route: sum over black interior cells of the number
// of white 4-neighbors (the border rows/columns participate as white).
std::int64_t perimeter_psi_edges(const BinaryImage& image);
double perimeter_psi(const BinaryImage& image);

// Independent Euler route: the degree-4 polynomial in the cell indicators,
// evaluated per window and summed over the same (m+1)^2 positions.
std::int64_t euler_poly_quarters(const BinaryImage& image);
double euler_poly(const BinaryImage& image);

}  // namespace minkcsr
