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

#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "error.hpp"

namespace minkcsr {

std::int64_t CountsGrid::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

BinaryImage BinaryImage::blank(int m, int c) {
  BinaryImage img;
  img.m = m;
  img.threshold_c = c;
  img.cells.assign(static_cast<std::size_t>(m + 2) * (m + 2), 0);
  return img;
}

CountsGrid bin_points(const PointPattern& pattern, int m) {
  if (m < 3) throw_invalid("bin_points: m must be >= 3, got " + std::to_string(m));
  CountsGrid grid;
  grid.m = m;
  grid.counts.assign(static_cast<std::size_t>(m) * m, 0);
  const double md = static_cast<double>(m);
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    const double px = pattern.x[k];
    const double py = pattern.y[k];
    if (!(px >= 0.0 && px <= 1.0 && py >= 0.0 && py <= 1.0)) {
      throw_invalid("bin_points: point " + std::to_string(k) +
                    " outside the unit square");
    }
    // min-clamp realizes the closed far edge of the last row/column.
    int i = std::min(static_cast<int>(px * md), m - 1);
    int j = std::min(static_cast<int>(py * md), m - 1);
    ++grid.counts[static_cast<std::size_t>(i) * m + j];
  }
  return grid;
}

BinaryImage threshold(const CountsGrid& grid, int c) {
  if (c < 1) throw_invalid("threshold: c must be >= 1, got " + std::to_string(c));
  BinaryImage img = BinaryImage::blank(grid.m, c);
  const int m = grid.m;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      img.cells[static_cast<std::size_t>(i + 1) * (m + 2) + (j + 1)] =
          grid.counts[static_cast<std::size_t>(i) * m + j] >= c ? 1 : 0;
    }
  }
  return img;
}

int choose_m(double lambda, double kappa) {
  if (!(lambda > 0.0)) throw_invalid("choose_m: lambda must be positive");
  if (!(kappa > 0.0)) throw_invalid("choose_m: kappa must be positive");
  int m = static_cast<int>(std::floor(std::sqrt(lambda / kappa)));
  if (m < 3) {
    throw_degenerate("choose_m: floor(sqrt(lambda/kappa)) = " +
                     std::to_string(m) + " < 3 (lambda = " +
                     std::to_string(lambda) + ", kappa = " +
                     std::to_string(kappa) + "); increase lambda or lower kappa");
  }
  return m;
}

double estimate_intensity(const PointPattern& pattern) {
  if (pattern.size() == 0)
    throw_degenerate("estimate_intensity: empty pattern has zero intensity");
  return static_cast<double>(pattern.size());
}

}  // namespace minkcsr
