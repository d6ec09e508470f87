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

#include "pointprocess.hpp"
#include "stats.hpp"

namespace minkcsr {

enum class CriticalSource { asymptotic, montecarlo };

struct PowerStudySpec {
  std::vector<ProcessSpec> alternatives;  // a null row is always added
  std::vector<double> lambdas;
  double kappa = 1.0;
  std::vector<int> thresholds = {1};
  std::vector<StatName> statistics = {StatName::t_area, StatName::t_perimeter,
                                      StatName::t_euler, StatName::t_combined};
  int reps = 2000;
  double level = 0.05;
  CriticalSource critical_source = CriticalSource::montecarlo;
  int calibration_reps = 100000;
  std::uint64_t seed = 1;
  int workers = 0;
};

struct PowerRow {
  std::string alternative;
  double lambda = 0.0;
  std::string statistic;
  int c = 0;
  double rate = 0.0;
  double se = 0.0;
  std::string note;  // nonempty marks a failed cell
};

struct PowerTable {
  std::vector<PowerRow> rows;
  int reps = 0;
  double level = 0.0;
  double kappa = 0.0;
  std::string critical_source;
  std::uint64_t seed = 0;
};

// Rejection rates over `reps` replications per (alternative, lambda) cell.
// Deterministic for a fixed spec and seed regardless of worker count; a
// failing cell is marked in its rows, the rest of the study continues.
PowerTable power_study(const PowerStudySpec& spec);

struct AnalyzeConfig {
  std::optional<double> lambda;  // empty -> point count
  double kappa = 3.0;
  std::optional<int> m;
  int c = 2;
  bool with_competitors = true;
  int mc_reps = 0;
  std::uint64_t seed = 1;
  int workers = 0;
};

// Per-dataset workflow: read a CSV point set, pick m for the target kappa,
// run the functional statistics (plus competitors) and report p-values.
std::vector<TestReport> analyze_dataset(const std::string& path,
                                        const AnalyzeConfig& config);

enum class EmitFormat { json, csv, text };
EmitFormat parse_emit_format(const std::string& text);

std::string emit(const std::vector<TestReport>& reports, EmitFormat format);
std::string emit(const PowerTable& table, EmitFormat format);

}  // namespace minkcsr
