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

#include "pointprocess.hpp"

#include <cmath>

#include "error.hpp"

namespace minkcsr {

namespace {

const double kSinNorm = 2.0 / (std::sin(2.0) + std::sin(1.0) - std::sin(3.0));

double f1(double x, double y) { return 6.0 / 7.0 * (x + y) * (x + y); }
double f2(double x, double y) { return kSinNorm * std::sin(2.0 * x + y); }
double f3(double x, double y) {
  const double u = x - 0.5, v = y - 0.5;
  return 240.0 / 23.0 * (u * u + v * v * v * v);
}
double f4(double x, double y) {
  const double u = x - 0.5, v = y - 0.5;
  return 240.0 / 217.0 * (1.0 - u * u - v * v * v * v);
}

}  // namespace

double density_value(int id, double x, double y) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
    throw_invalid("density_value: point outside the unit square");
  switch (id) {
    case 1: return f1(x, y);
    case 2: return f2(x, y);
    case 3: return f3(x, y);
    case 4: return f4(x, y);
    default: throw_invalid("density_value: id must be in 1..4");
  }
}

Density density_f(int id) {
  switch (id) {
    case 1: return {f1, 24.0 / 7.0, "f1"};
    case 2: return {f2, kSinNorm, "f2"};  // sup at 2x+y = pi/2
    case 3: return {f3, 75.0 / 23.0, "f3"};
    case 4: return {f4, 240.0 / 217.0, "f4"};
    default: throw_invalid("density_f: id must be in 1..4");
  }
}

std::string ProcessSpec::label() const {
  switch (kind) {
    case ProcessKind::hpp: return "hpp";
    case ProcessKind::ipp:
      return "ipp:" + (custom_density ? custom_density->name
                                      : "f" + std::to_string(density_id));
    case ProcessKind::bsp: return "bsp";
    case ProcessKind::matern: return "matern";
  }
  return "?";
}

ProcessSpec parse_process_model(const std::string& text) {
  ProcessSpec spec;
  if (text == "hpp") {
    spec.kind = ProcessKind::hpp;
  } else if (text == "bsp") {
    spec.kind = ProcessKind::bsp;
  } else if (text == "matern") {
    spec.kind = ProcessKind::matern;
  } else if (text.rfind("ipp:f", 0) == 0 && text.size() == 6 &&
             text[5] >= '1' && text[5] <= '4') {
    spec.kind = ProcessKind::ipp;
    spec.density_id = text[5] - '0';
  } else {
    throw_invalid("unknown process model '" + text +
                  "' (expected hpp, ipp:f1..ipp:f4, bsp or matern)");
  }
  return spec;
}

PointPattern sample_hpp(double lambda, RngStream& rng) {
  if (!(lambda > 0.0)) throw_invalid("sample_hpp: lambda must be positive");
  const std::int64_t n = rng.poisson(lambda);
  PointPattern pattern;
  pattern.x.reserve(static_cast<std::size_t>(n));
  pattern.y.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double px = rng.next_double();
    const double py = rng.next_double();
    pattern.push_back(px, py);
  }
  pattern.intensity_hint = lambda;
  return pattern;
}

PointPattern sample_ipp(double lambda, const Density& density, RngStream& rng) {
  if (!(lambda > 0.0)) throw_invalid("sample_ipp: lambda must be positive");
  if (!(density.sup_bound > 0.0))
    throw_invalid("sample_ipp: sup bound must be positive");
  const std::int64_t n = rng.poisson(lambda * density.sup_bound);
  PointPattern pattern;
  for (std::int64_t i = 0; i < n; ++i) {
    const double px = rng.next_double();
    const double py = rng.next_double();
    const double u = rng.next_double();
    const double fv = density.f(px, py);
    if (fv > density.sup_bound * (1.0 + 1e-12)) {
      throw_invalid("sample_ipp: density value " + std::to_string(fv) +
                    " exceeds the declared sup bound " +
                    std::to_string(density.sup_bound));
    }
    if (u * density.sup_bound < fv) pattern.push_back(px, py);
  }
  pattern.intensity_hint = lambda;
  return pattern;
}

PointPattern sample_bsp(double lambda, RngStream& rng) {
  if (!(lambda > 0.0)) throw_invalid("sample_bsp: lambda must be positive");
  const int k = static_cast<int>(std::lround(std::sqrt(lambda)));
  if (k < 2)
    throw_degenerate("sample_bsp: round(sqrt(lambda)) = " + std::to_string(k) +
                     " quadrats per side is too few (lambda = " +
                     std::to_string(lambda) + ")");
  PointPattern pattern;
  const double w = 1.0 / k;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double u = rng.next_double();
      int count;
      if (u < 1.0 / 10.0) {
        count = 0;
      } else if (u < 1.0 / 10.0 + 8.0 / 9.0) {
        count = 1;
      } else {
        count = 10;
      }
      for (int t = 0; t < count; ++t) {
        pattern.push_back((i + rng.next_double()) * w,
                          (j + rng.next_double()) * w);
      }
    }
  }
  pattern.intensity_hint = lambda;
  return pattern;
}

PointPattern sample_matern(double lambda, double radius, double offspring_mean,
                           RngStream& rng) {
  if (!(lambda > 0.0)) throw_invalid("sample_matern: lambda must be positive");
  if (!(radius > 0.0 && radius < 1.0))
    throw_invalid("sample_matern: radius must be in (0,1)");
  if (!(offspring_mean > 0.0))
    throw_invalid("sample_matern: offspring mean must be positive");
  const double parent_intensity = lambda / offspring_mean;
  const double lo = -radius;
  const double len = 1.0 + 2.0 * radius;
  // Parents live on the dilated window so the offspring process restricted
  // to the unit square is stationary with intensity lambda.
  const std::int64_t parents = rng.poisson(parent_intensity * len * len);
  PointPattern pattern;
  for (std::int64_t t = 0; t < parents; ++t) {
    const double cx = lo + len * rng.next_double();
    const double cy = lo + len * rng.next_double();
    const std::int64_t kids = rng.poisson(offspring_mean);
    for (std::int64_t s = 0; s < kids; ++s) {
      const double rho = radius * std::sqrt(rng.next_double());
      const double theta = 2.0 * M_PI * rng.next_double();
      const double px = cx + rho * std::cos(theta);
      const double py = cy + rho * std::sin(theta);
      if (px >= 0.0 && px <= 1.0 && py >= 0.0 && py <= 1.0)
        pattern.push_back(px, py);
    }
  }
  pattern.intensity_hint = lambda;
  return pattern;
}

PointPattern sample(const ProcessSpec& spec, RngStream& rng) {
  switch (spec.kind) {
    case ProcessKind::hpp:
      return sample_hpp(spec.lambda, rng);
    case ProcessKind::ipp:
      return sample_ipp(spec.lambda,
                        spec.custom_density ? *spec.custom_density
                                            : density_f(spec.density_id),
                        rng);
    case ProcessKind::bsp:
      return sample_bsp(spec.lambda, rng);
    case ProcessKind::matern: {
      const int m = choose_m(spec.lambda, spec.kappa);
      return sample_matern(spec.lambda, spec.radius, static_cast<double>(m),
                           rng);
    }
  }
  throw Error(ErrorCode::internal, "sample: unreachable process kind");
}

PointPattern sample(const ProcessSpec& spec, std::uint64_t seed) {
  RngStream rng(seed, 0, 0);
  return sample(spec, rng);
}

}  // namespace minkcsr
