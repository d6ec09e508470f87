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

#include "minkcsr.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "error.hpp"
#include "grid.hpp"
#include "harness.hpp"
#include "io.hpp"
#include "limits.hpp"
#include "minkowski.hpp"
#include "moments.hpp"
#include "pointprocess.hpp"
#include "stats.hpp"

struct minkcsr_pattern {
  minkcsr::PointPattern value;
};

struct minkcsr_report {
  std::vector<minkcsr::TestReport> reports;
};

struct minkcsr_power_table {
  minkcsr::PowerTable value;
};

namespace {

thread_local std::string g_last_error;

minkcsr_status to_status(const minkcsr::Error& e) {
  g_last_error = e.what();
  switch (e.code()) {
    case minkcsr::ErrorCode::invalid_input: return MINKCSR_ERR_INVALID_INPUT;
    case minkcsr::ErrorCode::degenerate: return MINKCSR_ERR_DEGENERATE;
    case minkcsr::ErrorCode::internal: return MINKCSR_ERR_INTERNAL;
  }
  return MINKCSR_ERR_INTERNAL;
}

template <typename Fn>
minkcsr_status guarded(Fn&& fn) {
  try {
    fn();
    return MINKCSR_OK;
  } catch (const minkcsr::Error& e) {
    return to_status(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MINKCSR_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return MINKCSR_ERR_INTERNAL;
  }
}

void require(bool ok, const char* message) {
  if (!ok) minkcsr::throw_invalid(message);
}

minkcsr::ProcessSpec convert(const minkcsr_process_spec& spec) {
  minkcsr::ProcessSpec out;
  switch (spec.kind) {
    case MINKCSR_PROC_HPP: out.kind = minkcsr::ProcessKind::hpp; break;
    case MINKCSR_PROC_IPP: out.kind = minkcsr::ProcessKind::ipp; break;
    case MINKCSR_PROC_BSP: out.kind = minkcsr::ProcessKind::bsp; break;
    case MINKCSR_PROC_MATERN: out.kind = minkcsr::ProcessKind::matern; break;
    default: minkcsr::throw_invalid("unknown process kind");
  }
  out.lambda = spec.lambda;
  out.density_id = spec.density_id;
  out.radius = spec.radius > 0.0 ? spec.radius : 0.2;
  out.kappa = spec.kappa > 0.0 ? spec.kappa : 1.0;
  return out;
}

minkcsr::StatName convert(minkcsr_stat stat) {
  switch (stat) {
    case MINKCSR_STAT_T_A: return minkcsr::StatName::t_area;
    case MINKCSR_STAT_T_P: return minkcsr::StatName::t_perimeter;
    case MINKCSR_STAT_T_CHI: return minkcsr::StatName::t_euler;
    case MINKCSR_STAT_T_C: return minkcsr::StatName::t_combined;
    case MINKCSR_STAT_T_C_TILDE: return minkcsr::StatName::t_combined_asym;
    case MINKCSR_STAT_Q: return minkcsr::StatName::quadrat;
    case MINKCSR_STAT_H: return minkcsr::StatName::hopkins;
    default: minkcsr::throw_invalid("unknown statistic id");
  }
}

minkcsr::EmitFormat convert(minkcsr_format format) {
  switch (format) {
    case MINKCSR_FORMAT_JSON: return minkcsr::EmitFormat::json;
    case MINKCSR_FORMAT_CSV: return minkcsr::EmitFormat::csv;
    case MINKCSR_FORMAT_TEXT: return minkcsr::EmitFormat::text;
    default: minkcsr::throw_invalid("unknown output format id");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr)
    throw minkcsr::Error(minkcsr::ErrorCode::internal, "out of memory");
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void copy_matrix(const Eigen::Matrix3d& m, double out[9]) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i * 3 + j] = m(i, j);
}

}  // namespace

extern "C" {

const char* minkcsr_last_error(void) { return g_last_error.c_str(); }

const char* minkcsr_version(void) { return "0.1.0"; }

minkcsr_status minkcsr_pattern_create(const double* x, const double* y,
                                      size_t n, minkcsr_pattern** out) {
  return guarded([&] {
    require(out && (n == 0 || (x && y)), "pattern_create: null argument");
    auto p = std::make_unique<minkcsr_pattern>();
    for (size_t i = 0; i < n; ++i) {
      if (!(x[i] >= 0.0 && x[i] <= 1.0 && y[i] >= 0.0 && y[i] <= 1.0))
        minkcsr::throw_invalid("pattern_create: point " + std::to_string(i) +
                               " outside the unit square");
    }
    p->value.x.assign(x, x + n);
    p->value.y.assign(y, y + n);
    *out = p.release();
  });
}

minkcsr_status minkcsr_pattern_read_csv(const char* path,
                                        minkcsr_pattern** out) {
  return guarded([&] {
    require(out && path, "pattern_read_csv: null argument");
    auto p = std::make_unique<minkcsr_pattern>();
    p->value = minkcsr::read_pattern_csv(path);
    *out = p.release();
  });
}

minkcsr_status minkcsr_pattern_write_csv(const minkcsr_pattern* p,
                                         const char* path) {
  return guarded([&] {
    require(p && path, "pattern_write_csv: null argument");
    minkcsr::write_pattern_csv(p->value, path);
  });
}

size_t minkcsr_pattern_size(const minkcsr_pattern* p) {
  return p == nullptr ? 0 : p->value.size();
}

minkcsr_status minkcsr_pattern_points(const minkcsr_pattern* p, double* x,
                                      double* y) {
  return guarded([&] {
    require(p && x && y, "pattern_points: null argument");
    std::memcpy(x, p->value.x.data(), p->value.size() * sizeof(double));
    std::memcpy(y, p->value.y.data(), p->value.size() * sizeof(double));
  });
}

void minkcsr_pattern_free(minkcsr_pattern* p) { delete p; }

minkcsr_status minkcsr_simulate(const minkcsr_process_spec* spec,
                                uint64_t seed, minkcsr_pattern** out) {
  return guarded([&] {
    require(spec && out, "simulate: null argument");
    auto p = std::make_unique<minkcsr_pattern>();
    p->value = minkcsr::sample(convert(*spec), seed);
    *out = p.release();
  });
}

minkcsr_status minkcsr_choose_m(double lambda, double kappa, int* out_m) {
  return guarded([&] {
    require(out_m != nullptr, "choose_m: null argument");
    *out_m = minkcsr::choose_m(lambda, kappa);
  });
}

minkcsr_status minkcsr_morphology(const minkcsr_pattern* p, int m, int c,
                                  minkcsr_triple* out, int64_t* black_cells) {
  return guarded([&] {
    require(p && out, "morphology: null argument");
    const minkcsr::BinaryImage image =
        minkcsr::threshold(minkcsr::bin_points(p->value, m), c);
    const minkcsr::FunctionalCounts counts = minkcsr::scan_image(image);
    const minkcsr::MinkowskiTriple triple = counts.scaled(m);
    out->area = triple.area;
    out->perimeter = triple.perimeter;
    out->euler = triple.euler;
    if (black_cells != nullptr) *black_cells = counts.area_quarters / 4;
  });
}

minkcsr_status minkcsr_null_moments(double lambda, int m, int c,
                                    minkcsr_moments* out) {
  return guarded([&] {
    require(out != nullptr, "null_moments: null argument");
    const minkcsr::NullMoments nm = minkcsr::null_moments(lambda, m, c);
    out->p = nm.p;
    for (int i = 0; i < 3; ++i) out->mean[i] = nm.mean[i];
    copy_matrix(nm.cov, out->cov);
    out->det = nm.det_closed_form;
    copy_matrix(nm.asym_cov, out->asym_cov);
    copy_matrix(nm.asym_inv, out->asym_inv);
  });
}

minkcsr_status minkcsr_run_test(const minkcsr_pattern* p,
                                const minkcsr_test_config* config,
                                minkcsr_report** out) {
  return guarded([&] {
    require(p && config && out && config->stats && config->n_stats > 0,
            "run_test: null argument");
    minkcsr::PointPattern pattern = p->value;
    minkcsr::TestConfig tc;
    if (config->lambda_mode != 0) {
      tc.lambda = config->lambda;
    } else {
      // Estimation requested: ignore any simulator hint on the pattern.
      pattern.intensity_hint.reset();
    }
    tc.kappa = config->kappa > 0.0 ? config->kappa : 1.0;
    if (config->m > 0) tc.m = config->m;
    tc.c = config->c;
    tc.stats.clear();
    for (size_t i = 0; i < config->n_stats; ++i)
      tc.stats.push_back(convert(config->stats[i]));
    tc.mc_reps = config->mc_reps;
    tc.seed = config->seed;
    tc.workers = config->workers;
    auto r = std::make_unique<minkcsr_report>();
    r->reports = minkcsr::run_csr_test(pattern, tc);
    *out = r.release();
  });
}

minkcsr_status minkcsr_report_render(const minkcsr_report* report,
                                     minkcsr_format format, char** out) {
  return guarded([&] {
    require(report && out, "report_render: null argument");
    *out = copy_string(minkcsr::emit(report->reports, convert(format)));
  });
}

void minkcsr_report_free(minkcsr_report* report) { delete report; }

void minkcsr_string_free(char* s) { std::free(s); }

minkcsr_status minkcsr_mc_critical_value(double lambda, double kappa, int c,
                                         minkcsr_stat stat, int reps,
                                         double level, uint64_t seed,
                                         int workers, double* out) {
  return guarded([&] {
    require(out != nullptr, "mc_critical_value: null argument");
    *out = minkcsr::mc_critical_value(lambda, kappa, c, convert(stat), reps,
                                      level, seed, workers);
  });
}

minkcsr_status minkcsr_alternative_limits(int density_id, int c, double kappa,
                                          int order, minkcsr_triple* out) {
  return guarded([&] {
    require(out != nullptr, "alternative_limits: null argument");
    const minkcsr::AlternativeLimit lim = minkcsr::alternative_limits(
        c, kappa, minkcsr::density_f(density_id), order > 0 ? order : 64);
    out->area = lim.area;
    out->perimeter = lim.perimeter;
    out->euler = lim.euler;
  });
}

minkcsr_status minkcsr_analyze_dataset(const char* path,
                                       const minkcsr_analyze_config* config,
                                       minkcsr_report** out) {
  return guarded([&] {
    require(path && config && out, "analyze_dataset: null argument");
    minkcsr::AnalyzeConfig ac;
    if (config->lambda > 0.0) ac.lambda = config->lambda;
    ac.kappa = config->kappa > 0.0 ? config->kappa : 3.0;
    if (config->m > 0) ac.m = config->m;
    ac.c = config->c > 0 ? config->c : 2;
    ac.with_competitors = config->with_competitors != 0;
    ac.mc_reps = config->mc_reps;
    ac.seed = config->seed;
    ac.workers = config->workers;
    auto r = std::make_unique<minkcsr_report>();
    r->reports = minkcsr::analyze_dataset(path, ac);
    *out = r.release();
  });
}

minkcsr_status minkcsr_power_study(const minkcsr_power_spec* spec,
                                   minkcsr_power_table** out) {
  return guarded([&] {
    require(spec && out && spec->lambdas && spec->n_lambdas > 0 &&
                spec->thresholds && spec->n_thresholds > 0 && spec->stats &&
                spec->n_stats > 0,
            "power_study: null argument");
    minkcsr::PowerStudySpec ps;
    ps.alternatives.clear();
    for (size_t i = 0; i < spec->n_alternatives; ++i)
      ps.alternatives.push_back(convert(spec->alternatives[i]));
    ps.lambdas.assign(spec->lambdas, spec->lambdas + spec->n_lambdas);
    ps.kappa = spec->kappa > 0.0 ? spec->kappa : 1.0;
    ps.thresholds.assign(spec->thresholds,
                         spec->thresholds + spec->n_thresholds);
    ps.statistics.clear();
    for (size_t i = 0; i < spec->n_stats; ++i)
      ps.statistics.push_back(convert(spec->stats[i]));
    ps.reps = spec->reps;
    ps.level = spec->level;
    ps.critical_source = spec->monte_carlo_critical != 0
                             ? minkcsr::CriticalSource::montecarlo
                             : minkcsr::CriticalSource::asymptotic;
    ps.calibration_reps =
        spec->calibration_reps > 0 ? spec->calibration_reps : 100000;
    ps.seed = spec->seed;
    ps.workers = spec->workers;
    auto t = std::make_unique<minkcsr_power_table>();
    t->value = minkcsr::power_study(ps);
    *out = t.release();
  });
}

minkcsr_status minkcsr_power_table_render(const minkcsr_power_table* table,
                                          minkcsr_format format, char** out) {
  return guarded([&] {
    require(table && out, "power_table_render: null argument");
    *out = copy_string(minkcsr::emit(table->value, convert(format)));
  });
}

void minkcsr_power_table_free(minkcsr_power_table* table) { delete table; }

}  // extern "C"
