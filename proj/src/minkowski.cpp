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

#include "minkowski.hpp"

#include <string>

#include "error.hpp"

namespace minkcsr {

namespace {

// Tables indexed by the 4-bit configuration (TL<<3 | TR<<2 | BL<<1 | BR).
// Diagonal pairs are 0b0110 and 0b1001.
constexpr std::int8_t kAreaQuarters[16] = {0, 1, 1, 2, 1, 2, 2, 3,
                                           1, 2, 2, 3, 2, 3, 3, 4};
constexpr std::int8_t kPerimeterEdges[16] = {0, 1, 1, 1, 1, 1, 2, 1,
                                             1, 2, 1, 1, 1, 1, 1, 0};
constexpr std::int8_t kEulerQuarters[16] = {0, 1, 1, 0, 1, 0, -2, -1,
                                            1, -2, 0, -1, 0, -1, -1, 0};

}  // namespace

LookupEntry lookup(WindowConfig config) {
  if (config.index < 1 || config.index > 16)
    throw_invalid("lookup: configuration index must be in 1..16, got " +
                  std::to_string(config.index));
  const int bits = config.index - 1;
  return {kAreaQuarters[bits] / 4.0, static_cast<double>(kPerimeterEdges[bits]),
          kEulerQuarters[bits] / 4.0};
}

MinkowskiTriple FunctionalCounts::scaled(int m) const {
  const double md = static_cast<double>(m);
  return {static_cast<double>(area_quarters) / (4.0 * md),
          static_cast<double>(perimeter_edges) / md,
          static_cast<double>(euler_quarters) / (4.0 * md)};
}

FunctionalCounts scan_image(const BinaryImage& image) {
  const int m = image.m;
  const int side = m + 2;
  const std::uint8_t* cells = image.cells.data();
  FunctionalCounts counts;
  // All (m+1)^2 windows of the bordered image: the white frame is part of
  // the scan, which is what ties the perimeter and Euler scores to the
  // finite observation window.
  for (int i = 0; i <= m; ++i) {
    const std::uint8_t* top = cells + static_cast<std::size_t>(i) * side;
    const std::uint8_t* bottom = top + side;
    int cfg = (top[0] << 2) | bottom[0];
    for (int j = 0; j < side - 1; ++j) {
      cfg = ((cfg << 1) & 0b1010) | (top[j + 1] << 2) | bottom[j + 1];
      counts.area_quarters += kAreaQuarters[cfg];
      counts.perimeter_edges += kPerimeterEdges[cfg];
      counts.euler_quarters += kEulerQuarters[cfg];
    }
  }
  return counts;
}

MinkowskiTriple functionals(const BinaryImage& image) {
  return scan_image(image).scaled(image.m);
}

std::int64_t perimeter_psi_edges(const BinaryImage& image) {
  const int m = image.m;
  const int side = m + 2;
  const std::uint8_t* cells = image.cells.data();
  std::int64_t edges = 0;
  for (int i = 1; i <= m; ++i) {
    const std::uint8_t* row = cells + static_cast<std::size_t>(i) * side;
    for (int j = 1; j <= m; ++j) {
      if (row[j]) {
        edges += 4 - (row[j - 1] + row[j + 1] + row[j - side] + row[j + side]);
      }
    }
  }
  return edges;
}

double perimeter_psi(const BinaryImage& image) {
  return static_cast<double>(perimeter_psi_edges(image)) / image.m;
}

std::int64_t euler_poly_quarters(const BinaryImage& image) {
  const int m = image.m;
  const int side = m + 2;
  const std::uint8_t* cells = image.cells.data();
  std::int64_t quarters = 0;
  for (int i = 0; i <= m; ++i) {
    const std::uint8_t* top = cells + static_cast<std::size_t>(i) * side;
    const std::uint8_t* bottom = top + side;
    for (int j = 0; j <= m; ++j) {
      const int a = top[j], b = top[j + 1], c = bottom[j], d = bottom[j + 1];
      // Quadruple the polynomial so each window contributes an integer:
      // sum - 2*(edge pairs + 2*diagonal pairs) + 4*(triples) - 4*(quad).
      const int pairs = a * b + a * c + b * d + c * d + 2 * a * d + 2 * b * c;
      const int triples = a * b * c + a * b * d + a * c * d + b * c * d;
      quarters += (a + b + c + d) - 2 * pairs + 4 * triples - 4 * (a * b * c * d);
    }
  }
  return quarters;
}

double euler_poly(const BinaryImage& image) {
  return static_cast<double>(euler_poly_quarters(image)) / (4.0 * image.m);
}

}  // namespace minkcsr
