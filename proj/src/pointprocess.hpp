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
#include <optional>
#include <string>

#include "grid.hpp"
#include "rng.hpp"

namespace minkcsr {

// A probability density on the unit square together with a bound on its
// supremum (used by the thinning sampler).
struct Density {
  std::function<double(double, double)> f;
  double sup_bound = 1.0;
  std::string name = "f";
};

// The four built-in gradient/bowl densities used by the power studies.
Density density_f(int id);
double density_value(int id, double x, double y);

enum class ProcessKind { hpp, ipp, bsp, matern };

struct ProcessSpec {
  ProcessKind kind = ProcessKind::hpp;
  double lambda = 0.0;
  int density_id = 1;                    // ipp with a built-in density
  std::optional<Density> custom_density; // ipp with a user density
  double radius = 0.2;                   // matern cluster radius
  double kappa = 1.0;                    // sets the matern offspring mean

  std::string label() const;
};

ProcessSpec parse_process_model(const std::string& text);

// Homogeneous Poisson process: N ~ Poisson(lambda), then N uniform points.
PointPattern sample_hpp(double lambda, RngStream& rng);

// Inhomogeneous Poisson process by thinning a dominating homogeneous one.
PointPattern sample_ipp(double lambda, const Density& density, RngStream& rng);

// Cell process: round(sqrt(lambda))^2 quadrats holding 0, 1 or 10 uniform
// points with probabilities 1/10, 8/9, 1/90 (unit expected count per
// quadrat, second-order statistics matching the homogeneous process).
PointPattern sample_bsp(double lambda, RngStream& rng);

// Matern cluster process: Poisson parents on the radius-dilated window,
// Poisson(offspring_mean) offspring uniform in a disc around each parent,
// parents discarded, offspring clipped to the unit square.
PointPattern sample_matern(double lambda, double radius, double offspring_mean,
                           RngStream& rng);

// Dispatch on the spec; kappa only enters for the matern offspring mean
// floor(sqrt(lambda/kappa)).
PointPattern sample(const ProcessSpec& spec, RngStream& rng);
PointPattern sample(const ProcessSpec& spec, std::uint64_t seed);

}  // namespace minkcsr
