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

#include "quadrature.hpp"

#include <cmath>

#include "error.hpp"

namespace minkcsr {

GaussLegendre::GaussLegendre(int order) {
  if (order < 1) throw_invalid("GaussLegendre: order must be >= 1");
  const int n = order;
  nodes.resize(n);
  weights.resize(n);
  const double eps = 1e-15;
  const int mid = (n + 1) / 2;
  for (int i = 0; i < mid; ++i) {
    // Newton iteration on P_n, started from the Chebyshev approximation.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::fabs(dx) < eps) break;
    }
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    // Map from [-1,1] to [0,1].
    nodes[i] = 0.5 * (1.0 - x);
    nodes[n - 1 - i] = 0.5 * (1.0 + x);
    weights[i] = 0.5 * w;
    weights[n - 1 - i] = 0.5 * w;
  }
}

double integrate_unit_square(const Integrand2d& f, int order) {
  GaussLegendre rule(order);
  double total = 0.0;
  for (int i = 0; i < order; ++i) {
    double row = 0.0;
    for (int j = 0; j < order; ++j) {
      row += rule.weights[j] * f(rule.nodes[i], rule.nodes[j]);
    }
    total += rule.weights[i] * row;
  }
  return total;
}

double integrate_unit_square_adaptive(const Integrand2d& f, double tol) {
  double prev = integrate_unit_square(f, 16);
  for (int order = 32; order <= 512; order *= 2) {
    double cur = integrate_unit_square(f, order);
    if (std::fabs(cur - prev) < tol) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace minkcsr
