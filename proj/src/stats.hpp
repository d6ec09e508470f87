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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grid.hpp"
#include "minkowski.hpp"
#include "moments.hpp"

namespace minkcsr {

enum class StatName {
  t_area,           // T_A
  t_perimeter,      // T_P
  t_euler,          // T_chi
  t_combined,       // T_c   (finite-m covariance)
  t_combined_asym,  // T_c~  (large-m covariance)
  quadrat,          // Q
  hopkins,          // H
};

std::string stat_name(StatName s);
StatName parse_stat_name(const std::string& text);
bool is_minkowski_stat(StatName s);

// Squared deviation of one functional from its null mean divided by the
// null variance, so the large-sample reference law is chi-square with one
// degree of freedom.
double t_single(const MinkowskiTriple& triple, const NullMoments& moments,
                int which);  // 0 = area, 1 = perimeter, 2 = euler

enum class CombineMode { finite_m, asymptotic };

// Mahalanobis-type quadratic form of the full triple; solved as a linear
// system, never through an explicit inverse.
double t_combined(const MinkowskiTriple& triple, const NullMoments& moments,
                  CombineMode mode);

// Refuses statistically degenerate configurations: threshold probability
// within 1e-6 of {0,1} or covariance condition number above 1e12.
void check_regular(const NullMoments& moments);

double p_value_asymptotic(double stat, int df);

// Empirical level-quantile of a statistic under the null, from `reps`
// simulated homogeneous patterns; deterministic given the seed, identical
// for every worker count.
double mc_critical_value(double lambda, double kappa, int c, StatName stat,
                         int reps, double level, std::uint64_t seed,
                         int workers = 0);

struct TestConfig {
  std::optional<double> lambda;  // known intensity; empty -> estimated
  std::optional<double> kappa;   // target mean per bin, used when m is unset
  std::optional<int> m;          // explicit side count, overrides kappa
  int c = 1;
  std::vector<StatName> stats = {StatName::t_area, StatName::t_perimeter,
                                 StatName::t_euler, StatName::t_combined};
  int mc_reps = 0;  // 0 -> asymptotic p-values only
  std::uint64_t seed = 1;
  int workers = 0;
  int hopkins_n = 0;   // 0 -> floor(N/10)
  int quadrat_k = 0;   // 0 -> floor(lambda^(1/4))^2 quadrats
};

struct TestReport {
  std::string statistic;
  double value = 0.0;
  int df = 0;  // 1 or 3 for the functional statistics, k-1 for Q, 0 for H
  double p_asymptotic = 1.0;
  std::optional<double> p_montecarlo;
  double lambda = 0.0;
  std::string lambda_source;  // "known" | "estimated"
  int m = 0;
  int c = 0;
  double kappa = 0.0;
  std::optional<double> p_threshold;  // null P(bin count >= c), echoed so
                                      // near-degenerate choices of c show up
  std::optional<int> reps;
  std::optional<std::uint64_t> seed;
  std::string note;
};

// End-to-end pipeline: bin, threshold, measure, standardize, attach
// asymptotic and (optionally) Monte Carlo p-values.
std::vector<TestReport> run_csr_test(const PointPattern& pattern,
                                     const TestConfig& config);

}  // namespace minkcsr
