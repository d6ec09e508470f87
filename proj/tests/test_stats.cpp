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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "pointprocess.hpp"
#include "stats.hpp"

using namespace minkcsr;

namespace {

MinkowskiTriple triple_at(const Eigen::Vector3d& v) {
  return {v[0], v[1], v[2]};
}

}  // namespace

TEST_CASE("single-functional statistics standardize exactly") {
  const NullMoments nm = null_moments(400.0, 20, 1);
  const MinkowskiTriple at_mean = triple_at(nm.mean);
  CHECK(t_single(at_mean, nm, 0) == 0.0);
  CHECK(t_single(at_mean, nm, 1) == 0.0);
  CHECK(t_single(at_mean, nm, 2) == 0.0);
  // One standard deviation off gives exactly one.
  Eigen::Vector3d shifted = nm.mean;
  shifted[0] += std::sqrt(nm.cov(0, 0));
  CHECK(t_single(triple_at(shifted), nm, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS(t_single(at_mean, nm, 3));
}

TEST_CASE("combined statistic is the squared Mahalanobis norm") {
  const NullMoments nm = null_moments(900.0, 30, 2);
  CHECK(t_combined(triple_at(nm.mean), nm, CombineMode::finite_m) ==
        doctest::Approx(0.0));
  // Against an eigen-decomposition route on a set of displaced triples.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(nm.cov);
  const Eigen::Matrix3d isqrt =
      es.eigenvectors() *
      es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
      es.eigenvectors().transpose();
  RngStream rng(3, 0, 0);
  for (int t = 0; t < 50; ++t) {
    Eigen::Vector3d d{rng.uniform(-1, 1), rng.uniform(-1, 1),
                      rng.uniform(-0.05, 0.05)};
    const double via_solver =
        t_combined(triple_at(nm.mean + d), nm, CombineMode::finite_m);
    const double via_sqrt = (isqrt * d).squaredNorm();
    CHECK(via_solver == doctest::Approx(via_sqrt).epsilon(1e-8));
    CHECK(via_solver >= 0.0);
  }
}

TEST_CASE("finite-m and large-m combined statistics agree when m is large") {
  // kappa = 1 at lambda = 1e6, i.e. m = 1000.
  const double lambda = 1e6;
  const int m = choose_m(lambda, 1.0);
  const NullMoments nm = null_moments(lambda, m, 1);
  RngStream rng(7, 0, 0);
  for (int t = 0; t < 20; ++t) {
    Eigen::Vector3d d{rng.uniform(-2, 2), rng.uniform(-2, 2),
                      rng.uniform(-0.1, 0.1)};
    const MinkowskiTriple x = triple_at(nm.mean + d);
    const double fin = t_combined(x, nm, CombineMode::finite_m);
    const double asy = t_combined(x, nm, CombineMode::asymptotic);
    CHECK(std::abs(fin - asy) / fin < 0.05);
  }
}

TEST_CASE("degenerate configurations are refused by name") {
  // c far above the mean count: p is essentially zero.
  try {
    const NullMoments nm = null_moments(100.0, 10, 30);
    check_regular(nm);
    FAIL("expected a degeneracy error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate);
  }
}

TEST_CASE("asymptotic p-values and the tail probabilities") {
  CHECK(p_value_asymptotic(0.0, 1) == doctest::Approx(1.0));
  CHECK(p_value_asymptotic(3.84, 1) == doctest::Approx(0.05).epsilon(2e-3));
  CHECK(p_value_asymptotic(7.81, 3) == doctest::Approx(0.05).epsilon(2e-3));
  CHECK_THROWS(p_value_asymptotic(-1.0, 1));
  CHECK_THROWS(p_value_asymptotic(1.0, 2));
}

TEST_CASE("empirical critical values are reproducible and sane") {
  const double a = mc_critical_value(200.0, 1.0, 1, StatName::t_area, 2000,
                                     0.95, 77, 2);
  const double b = mc_critical_value(200.0, 1.0, 1, StatName::t_area, 2000,
                                     0.95, 77, 1);
  CHECK(a == b);  // bit-identical across worker counts
  CHECK(a > 2.0);
  CHECK(a < 6.0);
  CHECK_THROWS(mc_critical_value(200.0, 1.0, 1, StatName::t_area, 100, 0.95, 1));
  CHECK_THROWS(mc_critical_value(200.0, 1.0, 1, StatName::quadrat, 2000, 0.95, 1));
}

TEST_CASE("the pipeline is invariant under relabeling of the points") {
  ProcessSpec spec;
  spec.lambda = 500.0;
  PointPattern p = sample(spec, 8);
  TestConfig config;
  config.lambda = 500.0;
  config.kappa = 1.0;
  config.c = 1;
  const std::vector<TestReport> before = run_csr_test(p, config);
  // Reverse the point order.
  std::reverse(p.x.begin(), p.x.end());
  std::reverse(p.y.begin(), p.y.end());
  const std::vector<TestReport> after = run_csr_test(p, config);
  REQUIRE(before.size() == after.size());
  for (std::size_t i = 0; i < before.size(); ++i)
    CHECK(before[i].value == after[i].value);
}

TEST_CASE("everything-in-one-corner patterns are rejected hard") {
  PointPattern corner;
  RngStream rng(19, 0, 0);
  for (int i = 0; i < 500; ++i)
    corner.push_back(0.05 * rng.next_double(), 0.05 * rng.next_double());
  TestConfig config;
  config.lambda = 500.0;
  config.kappa = 1.0;
  config.c = 1;
  config.stats = {StatName::t_area, StatName::t_perimeter, StatName::t_euler,
                  StatName::t_combined};
  for (const TestReport& r : run_csr_test(corner, config))
    CHECK(r.p_asymptotic < 1e-3);
}

TEST_CASE("empty patterns raise the zero-intensity error") {
  PointPattern empty;
  TestConfig config;
  CHECK_THROWS(run_csr_test(empty, config));
}

TEST_CASE("estimated intensity is flagged, known intensity is not") {
  ProcessSpec spec;
  spec.lambda = 400.0;
  PointPattern p = sample(spec, 21);
  p.intensity_hint.reset();
  TestConfig config;
  config.kappa = 1.0;
  const std::vector<TestReport> est = run_csr_test(p, config);
  CHECK(est.front().lambda_source == "estimated");
  CHECK(est.front().lambda == static_cast<double>(p.size()));
  CHECK(est.front().note.find("estimated") != std::string::npos);

  config.lambda = 400.0;
  const std::vector<TestReport> known = run_csr_test(p, config);
  CHECK(known.front().lambda_source == "known");
  CHECK(known.front().lambda == 400.0);

  // A simulator hint plays the role of a known intensity when the caller
  // does not override it.
  PointPattern hinted = p;
  hinted.intensity_hint = 400.0;
  TestConfig plain;
  plain.kappa = 1.0;
  const std::vector<TestReport> via_hint = run_csr_test(hinted, plain);
  CHECK(via_hint.front().lambda_source == "known");
  CHECK(via_hint.front().lambda == 400.0);
}

TEST_CASE("Monte Carlo p-values use the add-one rule and are reproducible") {
  ProcessSpec spec;
  spec.lambda = 300.0;
  const PointPattern p = sample(spec, 5);
  TestConfig config;
  config.lambda = 300.0;
  config.kappa = 1.0;
  config.mc_reps = 199;
  config.seed = 1234;
  config.stats = {StatName::t_area, StatName::t_combined};
  const std::vector<TestReport> a = run_csr_test(p, config);
  config.workers = 3;
  const std::vector<TestReport> b = run_csr_test(p, config);
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].p_montecarlo.has_value());
    CHECK(*a[i].p_montecarlo == *b[i].p_montecarlo);
    // (1 + exceed) / (1 + reps) lies on a lattice.
    const double scaled = *a[i].p_montecarlo * 200.0;
    CHECK(scaled == doctest::Approx(std::round(scaled)).epsilon(1e-12));
    CHECK(*a[i].p_montecarlo > 0.0);
    CHECK(*a[i].p_montecarlo <= 1.0);
  }
}

TEST_CASE("Monte Carlo p-values are roughly uniform under the null") {
  // A coarse super-uniformity check at a handful of levels.
  const double lambda = 200.0;
  const int n_data = 60;
  const int reps = 199;
  int hits10 = 0;
  for (int t = 0; t < n_data; ++t) {
    ProcessSpec spec;
    spec.lambda = lambda;
    const PointPattern p = sample(spec, 1000 + static_cast<std::uint64_t>(t));
    TestConfig config;
    config.lambda = lambda;
    config.kappa = 1.0;
    config.mc_reps = reps;
    config.seed = 555;
    config.stats = {StatName::t_perimeter};
    const std::vector<TestReport> r = run_csr_test(p, config);
    if (*r.front().p_montecarlo <= 0.1) ++hits10;
  }
  // Expect about 6 of 60; allow a wide band.
  CHECK(hits10 <= 18);
}

TEST_CASE("statistic names round-trip") {
  for (StatName s : {StatName::t_area, StatName::t_perimeter, StatName::t_euler,
                     StatName::t_combined, StatName::t_combined_asym,
                     StatName::quadrat, StatName::hopkins}) {
    CHECK(parse_stat_name(stat_name(s)) == s);
  }
  CHECK_THROWS(parse_stat_name("T_B"));
}
