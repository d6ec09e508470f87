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

#include "harness.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "competitors.hpp"
#include "error.hpp"
#include "io.hpp"
#include "parallel.hpp"
#include "specfun.hpp"

namespace minkcsr {

namespace {

constexpr std::uint64_t kStreamPowerCalib = 0x506f4341ULL;
constexpr std::uint64_t kStreamPowerCell = 0x506f5753ULL;

std::uint64_t cell_stream(std::uint64_t tag, std::uint64_t a, std::uint64_t b) {
  return tag ^ mix64(a * 0x100000001b3ULL + b + 1);
}

// One table cell per (statistic, threshold); the competitor tests carry no
// threshold and appear once with c = 0.
struct CellKey {
  StatName stat;
  int c;
};

std::vector<CellKey> make_cells(const std::vector<StatName>& stats,
                                const std::vector<int>& thresholds) {
  std::vector<CellKey> cells;
  for (StatName s : stats) {
    if (is_minkowski_stat(s)) {
      for (int c : thresholds) cells.push_back({s, c});
    } else {
      cells.push_back({s, 0});
    }
  }
  return cells;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string render_text_table(const std::vector<std::string>& header,
                              const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t j = 0; j < header.size(); ++j) width[j] = header[j].size();
  for (const auto& row : rows)
    for (std::size_t j = 0; j < row.size(); ++j)
      width[j] = std::max(width[j], row[j].size());
  std::ostringstream os;
  auto put = [&](const std::vector<std::string>& row) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) os << "  ";
      if (j == 0) {
        os << std::left << std::setw(static_cast<int>(width[j])) << row[j];
      } else {
        os << std::right << std::setw(static_cast<int>(width[j])) << row[j];
      }
    }
    os << '\n';
  };
  put(header);
  std::size_t total = header.size() ? header.size() * 2 - 2 : 0;
  for (std::size_t w : width) total += w;
  os << std::string(total, '-') << '\n';
  for (const auto& row : rows) put(row);
  return os.str();
}

}  // namespace

PowerTable power_study(const PowerStudySpec& spec) {
  if (spec.reps < 100) throw_invalid("power_study: need reps >= 100");
  if (!(spec.level > 0.0 && spec.level < 1.0))
    throw_invalid("power_study: level must be in (0,1)");
  if (spec.lambdas.empty()) throw_invalid("power_study: no intensities given");
  if (spec.thresholds.empty()) throw_invalid("power_study: no thresholds given");
  if (spec.statistics.empty()) throw_invalid("power_study: no statistics given");
  for (int c : spec.thresholds)
    if (c < 1) throw_invalid("power_study: thresholds must be >= 1");

  // The null process always participates, as the size row of the table.
  std::vector<ProcessSpec> alternatives;
  alternatives.push_back(ProcessSpec{});  // hpp
  for (const ProcessSpec& alt : spec.alternatives) {
    if (alt.kind != ProcessKind::hpp) alternatives.push_back(alt);
  }

  const std::vector<CellKey> cells = make_cells(spec.statistics, spec.thresholds);

  PowerTable table;
  table.reps = spec.reps;
  table.level = spec.level;
  table.kappa = spec.kappa;
  table.seed = spec.seed;
  table.critical_source =
      spec.critical_source == CriticalSource::montecarlo
          ? "montecarlo; competitor statistics use their asymptotic laws"
          : "asymptotic";

  for (std::size_t li = 0; li < spec.lambdas.size(); ++li) {
    const double lambda = spec.lambdas[li];

    int m = 0;
    std::string lambda_error;
    std::vector<NullMoments> moments;     // per threshold
    std::vector<std::string> c_error(spec.thresholds.size());
    try {
      m = choose_m(lambda, spec.kappa);
    } catch (const Error& e) {
      lambda_error = e.what();
    }
    if (lambda_error.empty()) {
      for (std::size_t ci = 0; ci < spec.thresholds.size(); ++ci) {
        try {
          NullMoments mom = null_moments(lambda, m, spec.thresholds[ci]);
          check_regular(mom);
          moments.push_back(mom);
        } catch (const Error& e) {
          moments.push_back(NullMoments{});
          c_error[ci] = e.what();
        }
      }
    }

    auto emit_failed_rows = [&](const std::string& alt_label,
                                const std::string& why,
                                const std::vector<CellKey>& which) {
      for (const CellKey& cell : which) {
        PowerRow row;
        row.alternative = alt_label;
        row.lambda = lambda;
        row.statistic = stat_name(cell.stat);
        row.c = cell.c;
        row.rate = std::nan("");
        row.se = std::nan("");
        row.note = why;
        table.rows.push_back(row);
      }
    };

    if (!lambda_error.empty()) {
      for (const ProcessSpec& alt : alternatives) {
        ProcessSpec named = alt;
        named.lambda = lambda;
        emit_failed_rows(named.label(), lambda_error, cells);
      }
      continue;
    }

    // Critical values: one null calibration pass per intensity covers every
    // functional statistic and threshold; competitor tests always reject on
    // their asymptotic p-values.
    std::vector<double> critical(cells.size(), 0.0);
    std::vector<std::string> cell_error(cells.size());
    std::vector<std::unique_ptr<Eigen::LDLT<Eigen::Matrix3d>>> solver_fin(
        spec.thresholds.size());
    std::vector<std::unique_ptr<Eigen::LDLT<Eigen::Matrix3d>>> solver_asym(
        spec.thresholds.size());
    for (std::size_t ci = 0; ci < spec.thresholds.size(); ++ci) {
      if (!c_error[ci].empty()) continue;
      solver_fin[ci] = std::make_unique<Eigen::LDLT<Eigen::Matrix3d>>(
          moments[ci].cov);
      solver_asym[ci] = std::make_unique<Eigen::LDLT<Eigen::Matrix3d>>(
          moments[ci].asym_cov);
    }

    auto threshold_index = [&](int c) {
      for (std::size_t ci = 0; ci < spec.thresholds.size(); ++ci)
        if (spec.thresholds[ci] == c) return ci;
      return std::size_t{0};
    };

    auto eval_stat = [&](const CellKey& cell, const MinkowskiTriple& triple) {
      const std::size_t ci = threshold_index(cell.c);
      const NullMoments& mom = moments[ci];
      const Eigen::Vector3d d{triple.area - mom.mean[0],
                              triple.perimeter - mom.mean[1],
                              triple.euler - mom.mean[2]};
      switch (cell.stat) {
        case StatName::t_area: return d[0] * d[0] / mom.cov(0, 0);
        case StatName::t_perimeter: return d[1] * d[1] / mom.cov(1, 1);
        case StatName::t_euler: return d[2] * d[2] / mom.cov(2, 2);
        case StatName::t_combined: return d.dot(solver_fin[ci]->solve(d));
        case StatName::t_combined_asym:
          return d.dot(solver_asym[ci]->solve(d));
        default:
          throw Error(ErrorCode::internal, "eval_stat: competitor statistic");
      }
    };

    for (std::size_t k = 0; k < cells.size(); ++k) {
      const CellKey& cell = cells[k];
      if (!is_minkowski_stat(cell.stat)) continue;
      const std::size_t ci = threshold_index(cell.c);
      if (!c_error[ci].empty()) {
        cell_error[k] = c_error[ci];
        continue;
      }
      if (spec.critical_source == CriticalSource::asymptotic) {
        critical[k] = chi_squared_quantile(
            1.0 - spec.level,
            cell.stat == StatName::t_combined ||
                    cell.stat == StatName::t_combined_asym
                ? 3
                : 1);
      }
    }

    if (spec.critical_source == CriticalSource::montecarlo) {
      if (spec.calibration_reps < 1000)
        throw_invalid("power_study: need calibration_reps >= 1000");
      const std::size_t n_cells = cells.size();
      std::vector<double> values(
          static_cast<std::size_t>(spec.calibration_reps) * n_cells, 0.0);
      parallel_for(spec.calibration_reps, spec.workers, [&](std::int64_t rep) {
        RngStream rng(spec.seed, cell_stream(kStreamPowerCalib, li, 0),
                      static_cast<std::uint64_t>(rep));
        const PointPattern pattern = sample_hpp(lambda, rng);
        const CountsGrid grid = bin_points(pattern, m);
        for (std::size_t ci = 0; ci < spec.thresholds.size(); ++ci) {
          if (!c_error[ci].empty()) continue;
          const MinkowskiTriple triple =
              functionals(threshold(grid, spec.thresholds[ci]));
          for (std::size_t k = 0; k < n_cells; ++k) {
            if (!is_minkowski_stat(cells[k].stat)) continue;
            if (threshold_index(cells[k].c) != ci) continue;
            values[static_cast<std::size_t>(rep) * n_cells + k] =
                eval_stat(cells[k], triple);
          }
        }
      });
      std::vector<double> column(static_cast<std::size_t>(spec.calibration_reps));
      for (std::size_t k = 0; k < n_cells; ++k) {
        if (!is_minkowski_stat(cells[k].stat) || !cell_error[k].empty()) continue;
        for (int rep = 0; rep < spec.calibration_reps; ++rep)
          column[static_cast<std::size_t>(rep)] =
              values[static_cast<std::size_t>(rep) * n_cells + k];
        std::sort(column.begin(), column.end());
        std::size_t idx = static_cast<std::size_t>(std::ceil(
            (1.0 - spec.level) * static_cast<double>(spec.calibration_reps)));
        idx = std::clamp<std::size_t>(idx, 1, column.size());
        critical[k] = column[idx - 1];
      }
    }

    // Power pass: one simulated pattern per replication feeds every cell.
    for (std::size_t ai = 0; ai < alternatives.size(); ++ai) {
      ProcessSpec alt = alternatives[ai];
      alt.lambda = lambda;
      alt.kappa = spec.kappa;
      const std::string label = alt.label();
      const std::size_t n_cells = cells.size();
      // 0 = accept, 1 = reject, 2 = replication failed.
      std::vector<std::uint8_t> flags(
          static_cast<std::size_t>(spec.reps) * n_cells, 0);
      parallel_for(spec.reps, spec.workers, [&](std::int64_t rep) {
        RngStream rng(spec.seed, cell_stream(kStreamPowerCell, ai, li),
                      static_cast<std::uint64_t>(rep));
        std::uint8_t* out = flags.data() + static_cast<std::size_t>(rep) * n_cells;
        PointPattern pattern;
        try {
          pattern = sample(alt, rng);
        } catch (const std::exception&) {
          for (std::size_t k = 0; k < n_cells; ++k) out[k] = 2;
          return;
        }
        CountsGrid grid;
        bool have_grid = false;
        std::vector<MinkowskiTriple> triples(spec.thresholds.size());
        for (std::size_t k = 0; k < n_cells; ++k) {
          const CellKey& cell = cells[k];
          try {
            if (cell.stat == StatName::quadrat) {
              const CompetitorReport q =
                  quadrat_test(pattern, default_quadrat_count(lambda));
              out[k] = q.p_value <= spec.level ? 1 : 0;
            } else if (cell.stat == StatName::hopkins) {
              const CompetitorReport h = hopkins_skellam(pattern, 0, rng);
              out[k] = h.p_value <= spec.level ? 1 : 0;
            } else {
              const std::size_t ci = threshold_index(cell.c);
              if (!c_error[ci].empty() || !cell_error[k].empty()) continue;
              if (!have_grid) {
                grid = bin_points(pattern, m);
                for (std::size_t t = 0; t < spec.thresholds.size(); ++t)
                  if (c_error[t].empty())
                    triples[t] = functionals(threshold(grid, spec.thresholds[t]));
                have_grid = true;
              }
              out[k] = eval_stat(cell, triples[ci]) > critical[k] ? 1 : 0;
            }
          } catch (const std::exception&) {
            out[k] = 2;
          }
        }
      });
      for (std::size_t k = 0; k < n_cells; ++k) {
        const CellKey& cell = cells[k];
        PowerRow row;
        row.alternative = label;
        row.lambda = lambda;
        row.statistic = stat_name(cell.stat);
        row.c = cell.c;
        const std::size_t ci = is_minkowski_stat(cell.stat)
                                   ? threshold_index(cell.c)
                                   : std::size_t{0};
        std::string why = cell_error[k];
        if (why.empty() && is_minkowski_stat(cell.stat) && !c_error[ci].empty())
          why = c_error[ci];
        std::int64_t rejections = 0;
        std::int64_t first_failed = -1;
        if (why.empty()) {
          for (int rep = 0; rep < spec.reps; ++rep) {
            const std::uint8_t f =
                flags[static_cast<std::size_t>(rep) * n_cells + k];
            if (f == 2) {
              first_failed = rep;
              break;
            }
            rejections += f;
          }
        }
        if (!why.empty()) {
          row.rate = std::nan("");
          row.se = std::nan("");
          row.note = why;
        } else if (first_failed >= 0) {
          row.rate = std::nan("");
          row.se = std::nan("");
          row.note = "replication " + std::to_string(first_failed) + " failed";
        } else {
          row.rate = static_cast<double>(rejections) / spec.reps;
          row.se = std::sqrt(row.rate * (1.0 - row.rate) / spec.reps);
        }
        table.rows.push_back(row);
      }
    }
  }
  return table;
}

std::vector<TestReport> analyze_dataset(const std::string& path,
                                        const AnalyzeConfig& config) {
  const PointPattern pattern = read_pattern_csv(path);
  if (pattern.size() == 0) throw_invalid(path + ": no points");
  TestConfig tc;
  tc.lambda = config.lambda;  // empty -> estimated from the point count
  tc.kappa = config.kappa;
  tc.m = config.m;
  tc.c = config.c;
  tc.stats = {StatName::t_area, StatName::t_perimeter, StatName::t_euler,
              StatName::t_combined};
  if (config.with_competitors) {
    tc.stats.push_back(StatName::quadrat);
    tc.stats.push_back(StatName::hopkins);
  }
  tc.mc_reps = config.mc_reps;
  tc.seed = config.seed;
  tc.workers = config.workers;
  return run_csr_test(pattern, tc);
}

EmitFormat parse_emit_format(const std::string& text) {
  if (text == "json") return EmitFormat::json;
  if (text == "csv") return EmitFormat::csv;
  if (text == "text") return EmitFormat::text;
  throw_invalid("unknown output format '" + text + "'");
}

std::string emit(const std::vector<TestReport>& reports, EmitFormat format) {
  using ordered_json = nlohmann::ordered_json;
  switch (format) {
    case EmitFormat::json: {
      ordered_json out = ordered_json::array();
      for (const TestReport& r : reports) {
        ordered_json j;
        j["statistic"] = r.statistic;
        j["value"] = r.value;
        j["df"] = r.df;
        j["p_asymptotic"] = r.p_asymptotic;
        if (r.p_montecarlo) j["p_montecarlo"] = *r.p_montecarlo;
        j["lambda"] = r.lambda;
        j["lambda_source"] = r.lambda_source;
        j["m"] = r.m;
        j["c"] = r.c;
        j["kappa"] = r.kappa;
        if (r.p_threshold) j["p"] = *r.p_threshold;
        if (r.reps) j["reps"] = *r.reps;
        if (r.seed) j["seed"] = *r.seed;
        if (!r.note.empty()) j["note"] = r.note;
        out.push_back(j);
      }
      return out.dump(2) + "\n";
    }
    case EmitFormat::csv: {
      std::ostringstream os;
      os << "statistic,value,df,p_asymptotic,p_montecarlo,lambda,"
            "lambda_source,m,c,kappa,p,reps,seed\n";
      for (const TestReport& r : reports) {
        os << r.statistic << ',' << format_double(r.value) << ',' << r.df << ','
           << format_double(r.p_asymptotic) << ',';
        if (r.p_montecarlo) os << format_double(*r.p_montecarlo);
        os << ',' << format_double(r.lambda) << ',' << r.lambda_source << ','
           << r.m << ',' << r.c << ',' << format_double(r.kappa) << ',';
        if (r.p_threshold) os << format_double(*r.p_threshold);
        os << ',';
        if (r.reps) os << *r.reps;
        os << ',';
        if (r.seed) os << *r.seed;
        os << '\n';
      }
      return os.str();
    }
    case EmitFormat::text: {
      std::vector<std::string> header = {"statistic", "value", "df",
                                         "p_asymptotic", "p_montecarlo"};
      std::vector<std::vector<std::string>> rows;
      for (const TestReport& r : reports) {
        std::ostringstream value, pa, pm;
        value << std::setprecision(6) << r.value;
        pa << std::setprecision(4) << std::scientific << r.p_asymptotic;
        if (r.p_montecarlo)
          pm << std::setprecision(4) << std::scientific << *r.p_montecarlo;
        rows.push_back({r.statistic, value.str(), std::to_string(r.df),
                        pa.str(), r.p_montecarlo ? pm.str() : "-"});
      }
      std::ostringstream os;
      if (!reports.empty()) {
        const TestReport& r = reports.front();
        os << "lambda = " << format_double(r.lambda) << " (" << r.lambda_source
           << "), m = " << r.m << ", c = " << r.c
           << ", kappa = " << format_double(r.kappa) << "\n";
      }
      os << render_text_table(header, rows);
      return os.str();
    }
  }
  throw Error(ErrorCode::internal, "emit: unreachable format");
}

std::string emit(const PowerTable& table, EmitFormat format) {
  using ordered_json = nlohmann::ordered_json;
  switch (format) {
    case EmitFormat::json: {
      ordered_json out;
      out["reps"] = table.reps;
      out["level"] = table.level;
      out["kappa"] = table.kappa;
      out["critical_values"] = table.critical_source;
      out["seed"] = table.seed;
      ordered_json rows = ordered_json::array();
      for (const PowerRow& r : table.rows) {
        ordered_json j;
        j["alternative"] = r.alternative;
        j["lambda"] = r.lambda;
        j["statistic"] = r.statistic;
        j["c"] = r.c;
        if (std::isnan(r.rate)) {
          j["rate"] = nullptr;
          j["se"] = nullptr;
        } else {
          j["rate"] = r.rate;
          j["se"] = r.se;
        }
        if (!r.note.empty()) j["note"] = r.note;
        rows.push_back(j);
      }
      out["rows"] = rows;
      return out.dump(2) + "\n";
    }
    case EmitFormat::csv: {
      std::ostringstream os;
      os << "alternative,lambda,statistic,c,rate,se\n";
      for (const PowerRow& r : table.rows) {
        os << r.alternative << ',' << format_double(r.lambda) << ','
           << r.statistic << ',' << r.c << ',';
        if (!std::isnan(r.rate))
          os << format_double(r.rate) << ',' << format_double(r.se);
        else
          os << ',';
        os << '\n';
      }
      return os.str();
    }
    case EmitFormat::text: {
      // One block per alternative: intensities down, statistic@c across.
      std::vector<std::string> columns;
      std::vector<double> lambdas;
      std::vector<std::string> alternatives;
      for (const PowerRow& r : table.rows) {
        std::string col = r.statistic;
        if (r.c > 0) col += " c=" + std::to_string(r.c);
        if (std::find(columns.begin(), columns.end(), col) == columns.end())
          columns.push_back(col);
        if (std::find(lambdas.begin(), lambdas.end(), r.lambda) == lambdas.end())
          lambdas.push_back(r.lambda);
        if (std::find(alternatives.begin(), alternatives.end(),
                      r.alternative) == alternatives.end())
          alternatives.push_back(r.alternative);
      }
      auto find_row = [&](const std::string& alt, double lambda,
                          const std::string& col) -> const PowerRow* {
        for (const PowerRow& r : table.rows) {
          std::string rc = r.statistic;
          if (r.c > 0) rc += " c=" + std::to_string(r.c);
          if (r.alternative == alt && r.lambda == lambda && rc == col) return &r;
        }
        return nullptr;
      };
      std::ostringstream os;
      os << "rejection rates (%), level " << table.level << ", " << table.reps
         << " replications, critical values: " << table.critical_source << '\n';
      for (const std::string& alt : alternatives) {
        os << '\n' << alt << '\n';
        std::vector<std::string> header = {"lambda"};
        header.insert(header.end(), columns.begin(), columns.end());
        std::vector<std::vector<std::string>> rows;
        for (double lambda : lambdas) {
          std::vector<std::string> row = {format_double(lambda)};
          for (const std::string& col : columns) {
            const PowerRow* r = find_row(alt, lambda, col);
            if (r == nullptr) {
              row.push_back("-");
            } else if (std::isnan(r->rate)) {
              row.push_back("x");
            } else {
              std::ostringstream cell;
              cell << std::fixed << std::setprecision(1) << 100.0 * r->rate;
              row.push_back(cell.str());
            }
          }
          rows.push_back(row);
        }
        os << render_text_table(header, rows);
      }
      return os.str();
    }
  }
  throw Error(ErrorCode::internal, "emit: unreachable format");
}

}  // namespace minkcsr
