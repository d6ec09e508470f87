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

#include "limits.hpp"

#include <cmath>

#include "error.hpp"
#include "specfun.hpp"

namespace minkcsr {

double q_fn(int c, double kappa, const Density& density, double x, double y) {
  if (c < 1) throw_invalid("q_fn: c must be >= 1");
  if (!(kappa > 0.0)) throw_invalid("q_fn: kappa must be positive");
  const double fv = density.f(x, y);
  const double mean = kappa * fv;
  double term = std::exp(-mean);
  double sum = term;
  for (int k = 1; k < c; ++k) {
    term *= mean / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

double lower_gamma_L(int c, double u) {
  if (c < 1) throw_invalid("lower_gamma_L: c must be >= 1");
  if (u < 0.0) throw_invalid("lower_gamma_L: u must be >= 0");
  if (u == 0.0) return 0.0;
  return regularized_gamma_lower(static_cast<double>(c), u);
}

AlternativeLimit alternative_limits(int c, double kappa, const Density& density,
                                    int order) {
  if (c < 1) throw_invalid("alternative_limits: c must be >= 1");
  if (!(kappa > 0.0)) throw_invalid("alternative_limits: kappa must be positive");
  auto q1 = [&](double x, double y) { return q_fn(c, kappa, density, x, y); };
  auto q2 = [&](double x, double y) {
    const double q = q_fn(c, kappa, density, x, y);
    return q * q;
  };
  auto q4 = [&](double x, double y) {
    const double q = q_fn(c, kappa, density, x, y);
    const double qq = q * q;
    return qq * qq;
  };
  double iq, iq2, iq4;
  if (order > 0) {
    iq = integrate_unit_square(q1, order);
    iq2 = integrate_unit_square(q2, order);
    iq4 = integrate_unit_square(q4, order);
  } else {
    iq = integrate_unit_square_adaptive(q1);
    iq2 = integrate_unit_square_adaptive(q2);
    iq4 = integrate_unit_square_adaptive(q4);
  }
  AlternativeLimit out;
  out.c = c;
  out.kappa = kappa;
  out.area = 1.0 - iq;
  out.perimeter = 4.0 * (iq - iq2);
  out.euler = (1.0 - iq) - 2.0 * (1.0 - iq2) + (1.0 - iq4);
  return out;
}

}  // namespace minkcsr
