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

#include "pointprocess.hpp"
#include "quadrature.hpp"

namespace minkcsr {

// P(Poisson(kappa f(x,y)) < c): the probability that a bin at (x,y) stays
// white in the dense-grid limit under an inhomogeneous alternative.
double q_fn(int c, double kappa, const Density& density, double x, double y);

// Regularized lower incomplete gamma at integer order:
// P(Poisson(u) >= c) as a function of u.
double lower_gamma_L(int c, double u);

// Almost-sure limits of the scaled functionals (divided by m) under an
// inhomogeneous alternative with density f, in the dense-grid regime.
struct AlternativeLimit {
  int c = 1;
  double kappa = 1.0;
  double area = 0.0;       // 1 - int q
  double perimeter = 0.0;  // 4 (int q - int q^2)
  double euler = 0.0;      // (1 - int q) - 2 (1 - int q^2) + (1 - int q^4)
};

// order > 0 selects a fixed tensor Gauss-Legendre order; order = 0 applies
// the adaptive doubling rule (for user-supplied densities).
AlternativeLimit alternative_limits(int c, double kappa, const Density& density,
                                    int order = 64);

}  // namespace minkcsr
