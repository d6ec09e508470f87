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

// Command-line front end; every operation goes through the public C API of
// the shared library. Machine output goes to stdout, progress and errors to
// stderr. Exit codes: 0 ok, 1 input error, 2 degenerate configuration,
// 3 internal error.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "minkcsr.h"

namespace {

int fail(minkcsr_status status) {
  std::cerr << "error: " << minkcsr_last_error() << "\n";
  return static_cast<int>(status);
}

minkcsr_stat parse_stat(const std::string& name) {
  static const std::map<std::string, minkcsr_stat> table = {
      {"T_A", MINKCSR_STAT_T_A},     {"T_P", MINKCSR_STAT_T_P},
      {"T_chi", MINKCSR_STAT_T_CHI}, {"T_c", MINKCSR_STAT_T_C},
      {"T_c_tilde", MINKCSR_STAT_T_C_TILDE},
      {"Q", MINKCSR_STAT_Q},         {"H", MINKCSR_STAT_H}};
  auto it = table.find(name);
  if (it == table.end())
    throw CLI::ValidationError("unknown statistic '" + name +
                               "' (T_A, T_P, T_chi, T_c, T_c_tilde, Q, H)");
  return it->second;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

minkcsr_format parse_format(const std::string& name) {
  if (name == "json") return MINKCSR_FORMAT_JSON;
  if (name == "csv") return MINKCSR_FORMAT_CSV;
  if (name == "text") return MINKCSR_FORMAT_TEXT;
  throw CLI::ValidationError("unknown format '" + name + "'");
}

minkcsr_process_spec parse_model(const std::string& text, double lambda,
                                 double radius, double kappa) {
  minkcsr_process_spec spec{};
  spec.lambda = lambda;
  spec.radius = radius;
  spec.kappa = kappa;
  if (text == "hpp") {
    spec.kind = MINKCSR_PROC_HPP;
  } else if (text == "bsp") {
    spec.kind = MINKCSR_PROC_BSP;
  } else if (text == "matern") {
    spec.kind = MINKCSR_PROC_MATERN;
  } else if (text.rfind("ipp:f", 0) == 0 && text.size() == 6 &&
             text[5] >= '1' && text[5] <= '4') {
    spec.kind = MINKCSR_PROC_IPP;
    spec.density_id = text[5] - '0';
  } else {
    throw CLI::ValidationError("unknown model '" + text +
                               "' (hpp, ipp:f1..ipp:f4, bsp, matern)");
  }
  return spec;
}

struct StringDeleter {
  void operator()(char* s) const { minkcsr_string_free(s); }
};
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct PatternDeleter {
  void operator()(minkcsr_pattern* p) const { minkcsr_pattern_free(p); }
};
using PatternPtr = std::unique_ptr<minkcsr_pattern, PatternDeleter>;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tests of complete spatial randomness via Minkowski "
               "functionals of binary images"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file");
  app.set_version_flag("--version", std::string(minkcsr_version()));

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "Sample a point process to CSV");
  std::string sim_model = "hpp";
  double sim_lambda = 100.0, sim_radius = 0.2, sim_kappa = 1.0;
  std::uint64_t sim_seed = 1;
  std::string sim_out;
  sim->add_option("--model", sim_model,
                  "hpp | ipp:f1..ipp:f4 | bsp | matern")->capture_default_str();
  sim->add_option("--lambda", sim_lambda, "Intensity")->capture_default_str();
  sim->add_option("--r", sim_radius, "Cluster radius (matern)")
      ->capture_default_str();
  sim->add_option("--kappa", sim_kappa, "Mean points per bin (matern)")
      ->capture_default_str();
  sim->add_option("--seed", sim_seed, "RNG seed")->capture_default_str();
  sim->add_option("--out", sim_out, "Output CSV path (default: stdout)");

  // ---- morphology ----
  auto* morph = app.add_subcommand(
      "morphology", "Area, perimeter and Euler characteristic of a pattern");
  std::string morph_input;
  int morph_m = 0, morph_c = 1;
  morph->add_option("--input", morph_input, "Point CSV")->required();
  morph->add_option("--m", morph_m, "Bins per side")->required();
  morph->add_option("--c", morph_c, "Threshold")->capture_default_str();

  // ---- moments ----
  auto* mom = app.add_subcommand(
      "moments", "Null moments of the functional triple as JSON");
  double mom_lambda = 0.0;
  int mom_m = 0, mom_c = 1;
  double mom_kappa = 0.0;
  mom->add_option("--lambda", mom_lambda, "Intensity")->required();
  mom->add_option("--m", mom_m, "Bins per side (overrides --kappa)");
  mom->add_option("--kappa", mom_kappa, "Target mean per bin");
  mom->add_option("--c", mom_c, "Threshold")->capture_default_str();

  // ---- limits ----
  auto* lim = app.add_subcommand(
      "limits", "Limiting functionals under an inhomogeneous alternative");
  std::string lim_f = "f1";
  int lim_c = 1, lim_order = 0;
  double lim_kappa = 1.0;
  lim->add_option("--f", lim_f, "Density f1..f4")->capture_default_str();
  lim->add_option("--c", lim_c, "Threshold")->capture_default_str();
  lim->add_option("--kappa", lim_kappa, "Mean per bin")->capture_default_str();
  lim->add_option("--order", lim_order, "Quadrature order (0 = default)");

  // ---- calibrate ----
  auto* cal = app.add_subcommand(
      "calibrate", "Empirical null critical value of a statistic");
  double cal_lambda = 0.0, cal_kappa = 1.0, cal_level = 0.95;
  int cal_c = 1, cal_reps = 100000, cal_workers = 0;
  std::string cal_stat = "T_A";
  std::uint64_t cal_seed = 1;
  cal->add_option("--lambda", cal_lambda, "Intensity")->required();
  cal->add_option("--kappa", cal_kappa, "Mean per bin")->capture_default_str();
  cal->add_option("--c", cal_c, "Threshold")->capture_default_str();
  cal->add_option("--stat", cal_stat, "Statistic")->capture_default_str();
  cal->add_option("--reps", cal_reps, "Replications")->capture_default_str();
  cal->add_option("--level", cal_level, "Quantile level")->capture_default_str();
  cal->add_option("--seed", cal_seed, "RNG seed")->capture_default_str();
  cal->add_option("--workers", cal_workers, "Worker threads (0 = auto)");

  // ---- test ----
  auto* test = app.add_subcommand("test", "Run the randomness tests on a CSV");
  std::string test_input, test_lambda = "auto", test_stats = "T_A,T_P,T_chi,T_c";
  double test_kappa = 1.0;
  int test_m = 0, test_c = 1, test_mc_reps = 0, test_workers = 0;
  std::uint64_t test_seed = 1;
  bool test_json = false, test_csv = false;
  test->add_option("--input", test_input, "Point CSV")->required();
  test->add_option("--lambda", test_lambda,
                   "Known intensity, or 'auto' to estimate")
      ->capture_default_str();
  test->add_option("--kappa", test_kappa, "Target mean per bin")
      ->capture_default_str();
  test->add_option("--m", test_m, "Bins per side (overrides --kappa)");
  test->add_option("--c", test_c, "Threshold")->capture_default_str();
  test->add_option("--stats", test_stats, "Comma list of statistics")
      ->capture_default_str();
  test->add_option("--mc-reps", test_mc_reps,
                   "Monte Carlo replications for p-values (0 = off)");
  test->add_option("--seed", test_seed, "RNG seed")->capture_default_str();
  test->add_option("--workers", test_workers, "Worker threads (0 = auto)");
  test->add_flag("--json", test_json, "JSON output (default)");
  test->add_flag("--csv", test_csv, "CSV output");

  // ---- analyze ----
  auto* ana = app.add_subcommand(
      "analyze", "Dataset workflow: pick m for a target mean per bin, run "
                 "all tests, report p-values");
  std::string ana_input, ana_format = "text";
  double ana_lambda = 0.0, ana_kappa = 3.0;
  int ana_m = 0, ana_c = 2, ana_mc_reps = 0, ana_workers = 0;
  bool ana_no_competitors = false;
  std::uint64_t ana_seed = 1;
  ana->add_option("--input", ana_input, "Point CSV")->required();
  ana->add_option("--lambda", ana_lambda,
                  "Known intensity (0 = use the point count)");
  ana->add_option("--kappa", ana_kappa, "Target mean per bin")
      ->capture_default_str();
  ana->add_option("--m", ana_m, "Bins per side (overrides --kappa)");
  ana->add_option("--c", ana_c, "Threshold")->capture_default_str();
  ana->add_flag("--no-competitors", ana_no_competitors,
                "Skip the quadrat-count and distance-ratio tests");
  ana->add_option("--mc-reps", ana_mc_reps, "Monte Carlo p-value replications");
  ana->add_option("--seed", ana_seed, "RNG seed")->capture_default_str();
  ana->add_option("--workers", ana_workers, "Worker threads (0 = auto)");
  ana->add_option("--format", ana_format, "json | csv | text")
      ->capture_default_str();

  // ---- power ----
  auto* pow = app.add_subcommand("power",
                                 "Rejection-rate study over alternatives");
  std::string pow_alts = "ipp:f1", pow_stats = "T_A,T_P,T_chi,T_c";
  std::string pow_lambdas = "50,100,200,500", pow_thresholds = "1,2";
  std::string pow_critical = "mc", pow_format = "text";
  double pow_kappa = 1.0, pow_level = 0.05, pow_radius = 0.2;
  int pow_reps = 2000, pow_calib = 100000, pow_workers = 0;
  std::uint64_t pow_seed = 1;
  pow->add_option("--alternatives", pow_alts,
                  "Comma list of models (hpp row always included)")
      ->capture_default_str();
  pow->add_option("--lambdas", pow_lambdas, "Comma list of intensities")
      ->capture_default_str();
  pow->add_option("--kappa", pow_kappa, "Mean per bin")->capture_default_str();
  pow->add_option("--c-list", pow_thresholds, "Comma list of thresholds")
      ->capture_default_str();
  pow->add_option("--stats", pow_stats, "Comma list of statistics")
      ->capture_default_str();
  pow->add_option("--reps", pow_reps, "Replications per cell")
      ->capture_default_str();
  pow->add_option("--level", pow_level, "Significance level")
      ->capture_default_str();
  pow->add_option("--critical", pow_critical,
                  "mc (empirical critical values) | asymptotic")
      ->capture_default_str();
  pow->add_option("--calib-reps", pow_calib, "Calibration replications")
      ->capture_default_str();
  pow->add_option("--r", pow_radius, "Cluster radius (matern)")
      ->capture_default_str();
  pow->add_option("--seed", pow_seed, "RNG seed")->capture_default_str();
  pow->add_option("--workers", pow_workers, "Worker threads (0 = auto)");
  pow->add_option("--format", pow_format, "json | csv | text")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      const minkcsr_process_spec spec =
          parse_model(sim_model, sim_lambda, sim_radius, sim_kappa);
      minkcsr_pattern* p = nullptr;
      if (minkcsr_status s = minkcsr_simulate(&spec, sim_seed, &p);
          s != MINKCSR_OK)
        return fail(s);
      PatternPtr guard(p);
      if (sim_out.empty()) {
        const size_t n = minkcsr_pattern_size(p);
        std::vector<double> x(n), y(n);
        minkcsr_pattern_points(p, x.data(), y.data());
        std::printf("x,y\n");
        for (size_t i = 0; i < n; ++i) std::printf("%.17g,%.17g\n", x[i], y[i]);
      } else {
        if (minkcsr_status s = minkcsr_pattern_write_csv(p, sim_out.c_str());
            s != MINKCSR_OK)
          return fail(s);
        std::cerr << minkcsr_pattern_size(p) << " points -> " << sim_out
                  << "\n";
      }
      return 0;
    }

    if (*morph) {
      minkcsr_pattern* p = nullptr;
      if (minkcsr_status s = minkcsr_pattern_read_csv(morph_input.c_str(), &p);
          s != MINKCSR_OK)
        return fail(s);
      PatternPtr guard(p);
      minkcsr_triple t;
      int64_t black = 0;
      if (minkcsr_status s = minkcsr_morphology(p, morph_m, morph_c, &t, &black);
          s != MINKCSR_OK)
        return fail(s);
      std::printf(
          "{\n  \"m\": %d,\n  \"c\": %d,\n  \"points\": %zu,\n"
          "  \"black_cells\": %lld,\n  \"area\": %.17g,\n"
          "  \"perimeter\": %.17g,\n  \"euler\": %.17g\n}\n",
          morph_m, morph_c, minkcsr_pattern_size(p),
          static_cast<long long>(black), t.area, t.perimeter, t.euler);
      return 0;
    }

    if (*mom) {
      int m = mom_m;
      if (m == 0) {
        if (mom_kappa <= 0.0) {
          std::cerr << "error: provide --m or a positive --kappa\n";
          return 1;
        }
        if (minkcsr_status s = minkcsr_choose_m(mom_lambda, mom_kappa, &m);
            s != MINKCSR_OK)
          return fail(s);
      }
      minkcsr_moments out;
      if (minkcsr_status s = minkcsr_null_moments(mom_lambda, m, mom_c, &out);
          s != MINKCSR_OK)
        return fail(s);
      std::printf("{\n  \"lambda\": %.17g,\n  \"m\": %d,\n  \"c\": %d,\n",
                  mom_lambda, m, mom_c);
      std::printf("  \"p\": %.17g,\n  \"mean\": [%.17g, %.17g, %.17g],\n",
                  out.p, out.mean[0], out.mean[1], out.mean[2]);
      auto print_matrix = [](const char* name, const double* v, bool last) {
        std::printf("  \"%s\": [", name);
        for (int i = 0; i < 9; ++i)
          std::printf("%.17g%s", v[i], i + 1 < 9 ? ", " : "");
        std::printf("]%s\n", last ? "" : ",");
      };
      print_matrix("cov", out.cov, false);
      std::printf("  \"det\": %.17g,\n", out.det);
      print_matrix("asym_cov", out.asym_cov, false);
      print_matrix("asym_inv", out.asym_inv, true);
      std::printf("}\n");
      return 0;
    }

    if (*lim) {
      if (lim_f.size() != 2 || lim_f[0] != 'f' || lim_f[1] < '1' ||
          lim_f[1] > '4') {
        std::cerr << "error: --f must be one of f1..f4\n";
        return 1;
      }
      minkcsr_triple out;
      if (minkcsr_status s = minkcsr_alternative_limits(
              lim_f[1] - '0', lim_c, lim_kappa, lim_order, &out);
          s != MINKCSR_OK)
        return fail(s);
      std::printf(
          "{\n  \"density\": \"%s\",\n  \"c\": %d,\n  \"kappa\": %.17g,\n"
          "  \"area_limit\": %.17g,\n  \"perimeter_limit\": %.17g,\n"
          "  \"euler_limit\": %.17g\n}\n",
          lim_f.c_str(), lim_c, lim_kappa, out.area, out.perimeter, out.euler);
      return 0;
    }

    if (*cal) {
      double crit = 0.0;
      if (minkcsr_status s = minkcsr_mc_critical_value(
              cal_lambda, cal_kappa, cal_c, parse_stat(cal_stat), cal_reps,
              cal_level, cal_seed, cal_workers, &crit);
          s != MINKCSR_OK)
        return fail(s);
      std::printf(
          "{\n  \"statistic\": \"%s\",\n  \"lambda\": %.17g,\n"
          "  \"kappa\": %.17g,\n  \"c\": %d,\n  \"level\": %.17g,\n"
          "  \"reps\": %d,\n  \"seed\": %llu,\n  \"critical_value\": %.17g\n}\n",
          cal_stat.c_str(), cal_lambda, cal_kappa, cal_c, cal_level, cal_reps,
          static_cast<unsigned long long>(cal_seed), crit);
      return 0;
    }

    if (*test) {
      minkcsr_pattern* p = nullptr;
      if (minkcsr_status s = minkcsr_pattern_read_csv(test_input.c_str(), &p);
          s != MINKCSR_OK)
        return fail(s);
      PatternPtr guard(p);
      std::vector<minkcsr_stat> stats;
      for (const std::string& name : split_list(test_stats))
        stats.push_back(parse_stat(name));
      minkcsr_test_config config{};
      if (test_lambda == "auto") {
        config.lambda_mode = 0;
      } else {
        config.lambda_mode = 1;
        try {
          config.lambda = std::stod(test_lambda);
        } catch (...) {
          std::cerr << "error: --lambda must be a number or 'auto'\n";
          return 1;
        }
      }
      config.kappa = test_kappa;
      config.m = test_m;
      config.c = test_c;
      config.stats = stats.data();
      config.n_stats = stats.size();
      config.mc_reps = test_mc_reps;
      config.seed = test_seed;
      config.workers = test_workers;
      minkcsr_report* report = nullptr;
      if (minkcsr_status s = minkcsr_run_test(p, &config, &report);
          s != MINKCSR_OK)
        return fail(s);
      char* rendered = nullptr;
      const minkcsr_format format =
          test_csv ? MINKCSR_FORMAT_CSV : MINKCSR_FORMAT_JSON;
      const minkcsr_status s = minkcsr_report_render(report, format, &rendered);
      minkcsr_report_free(report);
      if (s != MINKCSR_OK) return fail(s);
      StringPtr sguard(rendered);
      std::fputs(rendered, stdout);
      return 0;
    }

    if (*ana) {
      minkcsr_analyze_config config{};
      config.lambda = ana_lambda;
      config.kappa = ana_kappa;
      config.m = ana_m;
      config.c = ana_c;
      config.with_competitors = ana_no_competitors ? 0 : 1;
      config.mc_reps = ana_mc_reps;
      config.seed = ana_seed;
      config.workers = ana_workers;
      minkcsr_report* report = nullptr;
      if (minkcsr_status s =
              minkcsr_analyze_dataset(ana_input.c_str(), &config, &report);
          s != MINKCSR_OK)
        return fail(s);
      char* rendered = nullptr;
      const minkcsr_status s =
          minkcsr_report_render(report, parse_format(ana_format), &rendered);
      minkcsr_report_free(report);
      if (s != MINKCSR_OK) return fail(s);
      StringPtr sguard(rendered);
      std::fputs(rendered, stdout);
      return 0;
    }

    if (*pow) {
      std::vector<minkcsr_process_spec> alts;
      for (const std::string& model : split_list(pow_alts))
        alts.push_back(parse_model(model, 0.0, pow_radius, pow_kappa));
      std::vector<double> lambdas;
      for (const std::string& v : split_list(pow_lambdas))
        lambdas.push_back(std::stod(v));
      std::vector<int> thresholds;
      for (const std::string& v : split_list(pow_thresholds))
        thresholds.push_back(std::stoi(v));
      std::vector<minkcsr_stat> stats;
      for (const std::string& name : split_list(pow_stats))
        stats.push_back(parse_stat(name));
      minkcsr_power_spec spec{};
      spec.alternatives = alts.data();
      spec.n_alternatives = alts.size();
      spec.lambdas = lambdas.data();
      spec.n_lambdas = lambdas.size();
      spec.kappa = pow_kappa;
      spec.thresholds = thresholds.data();
      spec.n_thresholds = thresholds.size();
      spec.stats = stats.data();
      spec.n_stats = stats.size();
      spec.reps = pow_reps;
      spec.level = pow_level;
      if (pow_critical == "mc" || pow_critical == "montecarlo") {
        spec.monte_carlo_critical = 1;
      } else if (pow_critical == "asymptotic") {
        spec.monte_carlo_critical = 0;
      } else {
        std::cerr << "error: --critical must be 'mc' or 'asymptotic'\n";
        return 1;
      }
      spec.calibration_reps = pow_calib;
      spec.seed = pow_seed;
      spec.workers = pow_workers;
      std::cerr << "running " << alts.size() + 1 << " processes x "
                << lambdas.size() << " intensities, " << pow_reps
                << " replications each...\n";
      minkcsr_power_table* table = nullptr;
      if (minkcsr_status s = minkcsr_power_study(&spec, &table);
          s != MINKCSR_OK)
        return fail(s);
      char* rendered = nullptr;
      const minkcsr_status s = minkcsr_power_table_render(
          table, parse_format(pow_format), &rendered);
      minkcsr_power_table_free(table);
      if (s != MINKCSR_OK) return fail(s);
      StringPtr sguard(rendered);
      std::fputs(rendered, stdout);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
