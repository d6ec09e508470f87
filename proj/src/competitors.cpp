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

#include "competitors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "error.hpp"
#include "specfun.hpp"

namespace minkcsr {

int default_quadrat_count(double lambda) {
  if (!(lambda > 0.0)) throw_invalid("default_quadrat_count: lambda must be positive");
  const int side = static_cast<int>(std::floor(std::pow(lambda, 0.25)));
  if (side < 2) {
    throw_degenerate("default_quadrat_count: floor(lambda^(1/4)) = " +
                     std::to_string(side) + " per side is degenerate");
  }
  return side * side;
}

CompetitorReport quadrat_test(const PointPattern& pattern, int k, bool two_sided) {
  const std::size_t n = pattern.size();
  if (n == 0) throw_degenerate("quadrat_test: empty pattern");
  if (k < 2) throw_invalid("quadrat_test: k must be >= 2");
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(k))));
  if (side * side != k)
    throw_invalid("quadrat_test: k = " + std::to_string(k) +
                  " is not a perfect square");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
  for (std::size_t t = 0; t < n; ++t) {
    const int i = std::min(static_cast<int>(pattern.x[t] * side), side - 1);
    const int j = std::min(static_cast<int>(pattern.y[t] * side), side - 1);
    ++counts[static_cast<std::size_t>(i) * side + j];
  }
  const double expected = static_cast<double>(n) / k;
  double q = 0.0;
  for (std::int64_t u : counts) {
    const double d = static_cast<double>(u) - expected;
    q += d * d / expected;
  }
  CompetitorReport report;
  report.name = "Q";
  report.value = q;
  report.param = k;
  report.tail = two_sided ? "two_sided" : "upper";
  const double upper = chi_squared_upper_tail(q, k - 1);
  report.p_value =
      two_sided ? std::min(1.0, 2.0 * std::min(upper, 1.0 - upper)) : upper;
  if (expected < 5.0) {
    report.note = "expected count per quadrat " + std::to_string(expected) +
                  " is below 5; chi-square approximation is rough";
  }
  return report;
}

NeighborGrid::NeighborGrid(const PointPattern& pattern) : pattern_(pattern) {
  const std::size_t n = pattern.size();
  g_ = std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(n)))));
  const std::size_t buckets = static_cast<std::size_t>(g_) * g_;
  std::vector<std::uint32_t> counts(buckets + 1, 0);
  auto bucket_of = [&](std::size_t t) {
    const int i = std::min(static_cast<int>(pattern_.x[t] * g_), g_ - 1);
    const int j = std::min(static_cast<int>(pattern_.y[t] * g_), g_ - 1);
    return static_cast<std::size_t>(i) * g_ + j;
  };
  for (std::size_t t = 0; t < n; ++t) ++counts[bucket_of(t) + 1];
  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  start_ = counts;
  order_.resize(n);
  std::vector<std::uint32_t> cursor(start_.begin(), start_.end() - 1);
  for (std::size_t t = 0; t < n; ++t)
    order_[cursor[bucket_of(t)]++] = static_cast<std::uint32_t>(t);
}

double NeighborGrid::nearest_sq(double x, double y, std::ptrdiff_t exclude) const {
  const double w = 1.0 / g_;
  const int ci = std::clamp(static_cast<int>(x * g_), 0, g_ - 1);
  const int cj = std::clamp(static_cast<int>(y * g_), 0, g_ - 1);
  double best = std::numeric_limits<double>::infinity();
  for (int ring = 0; ring < g_; ++ring) {
    const int ilo = std::max(0, ci - ring), ihi = std::min(g_ - 1, ci + ring);
    const int jlo = std::max(0, cj - ring), jhi = std::min(g_ - 1, cj + ring);
    for (int i = ilo; i <= ihi; ++i) {
      for (int j = jlo; j <= jhi; ++j) {
        // Only the new ring, not the already-scanned interior.
        if (ring > 0 && std::max(std::abs(i - ci), std::abs(j - cj)) != ring)
          continue;
        const std::size_t b = static_cast<std::size_t>(i) * g_ + j;
        for (std::uint32_t t = start_[b]; t < start_[b + 1]; ++t) {
          const std::uint32_t idx = order_[t];
          if (static_cast<std::ptrdiff_t>(idx) == exclude) continue;
          const double dx = pattern_.x[idx] - x;
          const double dy = pattern_.y[idx] - y;
          best = std::min(best, dx * dx + dy * dy);
        }
      }
    }
    // Everything outside the scanned block is at least ring*w away.
    const double safe = static_cast<double>(ring) * w;
    if (best <= safe * safe) break;
  }
  return best;
}

CompetitorReport hopkins_skellam(const PointPattern& pattern, int n,
                                 RngStream& rng, HopkinsVariant variant) {
  const std::size_t count = pattern.size();
  if (count < 10)
    throw_degenerate("hopkins_skellam: need at least 10 points, got " +
                     std::to_string(count));
  const int n_max = static_cast<int>(count / 10);
  if (n == 0) n = n_max;
  if (n < 1 || n > n_max) {
    throw_invalid("hopkins_skellam: subsample size " + std::to_string(n) +
                  " outside 1..floor(N/10) = " + std::to_string(n_max));
  }
  // Partial Fisher-Yates draw of n distinct pattern indices.
  std::vector<std::uint32_t> indices(count);
  std::iota(indices.begin(), indices.end(), 0);
  for (int t = 0; t < n; ++t) {
    const std::uint64_t r =
        t + rng.uniform_index(static_cast<std::uint64_t>(count - t));
    std::swap(indices[static_cast<std::size_t>(t)], indices[r]);
  }
  NeighborGrid grid(pattern);
  const bool squared = variant == HopkinsVariant::squared;
  double sum_d = 0.0;
  for (int t = 0; t < n; ++t) {
    const std::uint32_t idx = indices[static_cast<std::size_t>(t)];
    const double d2 = grid.nearest_sq(pattern.x[idx], pattern.y[idx],
                                      static_cast<std::ptrdiff_t>(idx));
    sum_d += squared ? d2 : std::sqrt(d2);
  }
  double sum_e = 0.0;
  for (int t = 0; t < n; ++t) {
    const double x = rng.next_double();
    const double y = rng.next_double();
    const double e2 = grid.nearest_sq(x, y);
    sum_e += squared ? e2 : std::sqrt(e2);
  }
  CompetitorReport report;
  report.name = "H";
  report.param = n;
  report.tail = "two_sided";
  if (sum_e <= 0.0) {
    throw_degenerate("hopkins_skellam: zero empty-space distances");
  }
  report.value = sum_d / sum_e;
  const double cdf = f_distribution_cdf(report.value, 2.0 * n, 2.0 * n);
  report.p_value = std::min(1.0, 2.0 * std::min(cdf, 1.0 - cdf));
  report.note = squared ? "squared-distance variant" : "plain-distance variant";
  return report;
}

}  // namespace minkcsr
