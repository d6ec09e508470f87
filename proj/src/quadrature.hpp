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

#include <functional>
#include <vector>

namespace minkcsr {

// Gauss-Legendre rule mapped to [0,1].
struct GaussLegendre {
  explicit GaussLegendre(int order);
  std::vector<double> nodes;
  std::vector<double> weights;
};

using Integrand2d = std::function<double(double, double)>;

// Tensor-product rule over the unit square.
double integrate_unit_square(const Integrand2d& f, int order);

// Doubles the order (16, 32, ..., 512) until successive values differ by
// less than tol; intended for user-supplied smooth densities.
double integrate_unit_square_adaptive(const Integrand2d& f, double tol = 1e-9);

}  // namespace minkcsr
