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

#include <string>

#include "grid.hpp"
#include "rng.hpp"

namespace minkcsr {

struct CompetitorReport {
  std::string name;  // "Q" or "H"
  double value = 0.0;
  double p_value = 1.0;
  int param = 0;  // quadrat count k, or subsample size n
  std::string tail;
  std::string note;
};

// Number of quadrats for the chi-square count test: per-side count
// floor(lambda^(1/4)), squared.
int default_quadrat_count(double lambda);

// Chi-square quadrat-count test over k equal squares (k a perfect square).
CompetitorReport quadrat_test(const PointPattern& pattern, int k,
                              bool two_sided = false);

enum class HopkinsVariant { plain, squared };

// Hopkins-Skellam ratio of nearest-neighbor to empty-space distances over a
// sparse subsample of size n, referred to the F(2n,2n) law. The squared
// variant is the one whose null law is exact in the plane and is the
// default; the plain ratio of unsquared sums is kept for comparability.
CompetitorReport hopkins_skellam(const PointPattern& pattern, int n,
                                 RngStream& rng,
                                 HopkinsVariant variant = HopkinsVariant::squared);

// Exact nearest-neighbor queries over a uniform bucket grid.
class NeighborGrid {
 public:
  explicit NeighborGrid(const PointPattern& pattern);

  // Squared distance to the nearest stored point, optionally excluding one
  // index (for nearest-neighbor distances within the pattern).
  double nearest_sq(double x, double y, std::ptrdiff_t exclude = -1) const;

 private:
  const PointPattern& pattern_;
  int g_ = 1;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> start_;
};

}  // namespace minkcsr
