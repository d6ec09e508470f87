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
#include <optional>
#include <vector>

namespace minkcsr {

// A finite planar point pattern on the unit square.
struct PointPattern {
  std::vector<double> x;
  std::vector<double> y;
  std::optional<double> intensity_hint;

  std::size_t size() const { return x.size(); }
  void push_back(double px, double py) {
    x.push_back(px);
    y.push_back(py);
  }
};

// m x m matrix of per-bin point counts, row-major; bin (i,j) with
// i,j in 0..m-1 covers [i/m,(i+1)/m) x [j/m,(j+1)/m), closed on the
// far side of the last row/column.
struct CountsGrid {
  int m = 0;
  std::vector<std::int32_t> counts;

  std::int32_t at(int i, int j) const { return counts[i * m + j]; }
  std::int64_t total() const;
};

// Thresholded image with a one-cell white border: (m+2) x (m+2),
// row 0, row m+1, column 0, column m+1 all white.
struct BinaryImage {
  int m = 0;
  int threshold_c = 0;
  std::vector<std::uint8_t> cells;

  int side() const { return m + 2; }
  std::uint8_t at(int i, int j) const { return cells[i * (m + 2) + j]; }
  void set(int i, int j, bool v) { cells[i * (m + 2) + j] = v ? 1 : 0; }

  static BinaryImage blank(int m, int c);
};

// Assign each point to its bin; coordinates exactly on interior edges go to
// the higher-index bin, and x=1 / y=1 fall in the last row/column.
CountsGrid bin_points(const PointPattern& pattern, int m);

BinaryImage threshold(const CountsGrid& grid, int c);

// Side count for the target mean points-per-bin: floor(sqrt(lambda/kappa)).
int choose_m(double lambda, double kappa);

// Point count divided by the unit window area. The caller decides whether a
// known intensity takes precedence; reports flag estimated intensities.
double estimate_intensity(const PointPattern& pattern);

}  // namespace minkcsr
