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

#include <cmath>

#include "grid.hpp"
#include "minkowski.hpp"
#include "moments.hpp"
#include "rng.hpp"
#include "specfun.hpp"

using namespace minkcsr;

TEST_CASE("threshold exceedance probability") {
  // kappa = 1: P(N >= 1) = 1 - e^{-1}, P(N >= 2) = 1 - 2 e^{-1}.
  CHECK(exceedance_prob_kappa(1.0, 1) ==
        doctest::Approx(0.6321205588285577).epsilon(1e-12));
  CHECK(exceedance_prob_kappa(1.0, 2) ==
        doctest::Approx(0.26424111765711533).epsilon(1e-12));
  CHECK(exceedance_prob(9.0, 3, 1) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(exceedance_prob(1e-8, 3, 1) == doctest::Approx(0.0).epsilon(1e-8));
  CHECK_THROWS(exceedance_prob(-1.0, 3, 1));
  CHECK_THROWS(exceedance_prob_kappa(1.0, 0));
}

TEST_CASE("exceedance agrees with the incomplete-gamma route") {
  // P(Poisson(u) >= c) equals the regularized lower incomplete gamma at
  // integer order c; the two sides are computed by unrelated methods.
  for (int c : {1, 2, 3, 5, 10, 20}) {
    for (double kappa : {0.01, 0.3, 1.0, 3.0, 10.0, 50.0}) {
      const double lhs = exceedance_prob_kappa(kappa, c);
      const double rhs = regularized_gamma_lower(c, kappa);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
  }
}

TEST_CASE("exceedance is monotone in c and lambda") {
  for (double kappa : {0.2, 1.0, 4.0}) {
    double prev = 1.0;
    for (int c = 1; c <= 12; ++c) {
      const double p = exceedance_prob_kappa(kappa, c);
      CHECK(p < prev);
      CHECK(p >= 0.0);
      CHECK(p < 1.0);
      prev = p;
    }
  }
  double prev = 0.0;
  for (double kappa : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const double p = exceedance_prob_kappa(kappa, 2);
    CHECK(p > prev);
    prev = p;
  }
  // very large mean: the log-space branch keeps the value finite and sane
  CHECK(exceedance_prob_kappa(900.0, 1) == doctest::Approx(1.0));
  CHECK(exceedance_prob_kappa(900.0, 5) == doctest::Approx(1.0));
}

TEST_CASE("mean vector endpoints") {
  for (int m : {3, 10, 31}) {
    const Eigen::Vector3d at1 = mean_vector(1.0, m);
    CHECK(at1[0] == doctest::Approx(m));
    CHECK(at1[1] == doctest::Approx(4.0));
    CHECK(at1[2] == doctest::Approx(1.0 / m));
    const Eigen::Vector3d at0 = mean_vector(0.0, m);
    CHECK(at0[0] == 0.0);
    CHECK(at0[1] == 0.0);
    CHECK(at0[2] == 0.0);
  }
}

TEST_CASE("degenerate coloring probabilities give zero spread") {
  const Eigen::Vector3d v0 = variance_vector(0.0, 5);
  const Eigen::Vector3d v1 = variance_vector(1.0, 5);
  const Eigen::Vector3d c0 = covariance_vector(0.0, 5);
  const Eigen::Vector3d c1 = covariance_vector(1.0, 5);
  for (int i = 0; i < 3; ++i) {
    CHECK(v0[i] == 0.0);
    CHECK(v1[i] == 0.0);
    CHECK(c0[i] == 0.0);
    CHECK(c1[i] == 0.0);
  }
  CHECK(variance_vector(0.5, 5)[0] == doctest::Approx(0.25));
}

TEST_CASE("corner-window scores pin the covariance building blocks") {
  // The 2x2 window in the image corner sees exactly one random cell; its
  // perimeter score equals that cell's indicator and its Euler score equals
  // a quarter of it, so their covariance is p(1-p)/4 -- 0.0525 at p = 0.3.
  const double p = 0.3;
  double e_v = 0, e_w = 0, e_vw = 0;
  for (int z = 0; z <= 1; ++z) {
    const double w = z ? p : 1.0 - p;
    BinaryImage img = BinaryImage::blank(3, 1);
    img.set(1, 1, z != 0);
    const int cfg = (img.at(0, 0) << 3) | (img.at(0, 1) << 2) |
                    (img.at(1, 0) << 1) | img.at(1, 1);
    const LookupEntry e = lookup({cfg + 1});
    e_v += w * e.perimeter;
    e_w += w * e.euler;
    e_vw += w * e.perimeter * e.euler;
  }
  CHECK(e_vw - e_v * e_w == doctest::Approx(0.0525).epsilon(1e-12));
}

TEST_CASE("closed forms match the enumeration oracle to 1e-10") {
  for (int m : {3, 4}) {
    for (double p :
         {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
      const OracleMoments oracle = enumeration_oracle(m, p);
      const Eigen::Vector3d mean = mean_vector(p, m);
      const CovarianceResult cr = covariance_matrix(p, m);
      for (int i = 0; i < 3; ++i)
        CHECK(std::abs(oracle.mean[i] - mean[i]) < 1e-10);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          CHECK(std::abs(oracle.cov(i, j) - cr.cov(i, j)) < 1e-10);
      CHECK(std::abs(oracle.cov.determinant() - cr.det) < 1e-10);
    }
  }
}

TEST_CASE("oracle endpoints") {
  const OracleMoments sure = enumeration_oracle(3, 1.0);
  CHECK(sure.mean[0] == doctest::Approx(3.0));
  CHECK(sure.mean[1] == doctest::Approx(4.0));
  CHECK(sure.mean[2] == doctest::Approx(1.0 / 3.0));
  CHECK(sure.cov.norm() == doctest::Approx(0.0));
  CHECK_THROWS(enumeration_oracle(5, 0.5));
}

TEST_CASE("closed-form determinant matches numerical linear algebra") {
  for (int m : {3, 5, 10, 50}) {
    for (double p : {0.05, 0.2, 0.5, 0.8, 0.95}) {
      const CovarianceResult cr = covariance_matrix(p, m);
      const double numerical = cr.cov.determinant();
      CHECK(std::abs(cr.det - numerical) <=
            1e-10 * std::max(std::abs(numerical), 1e-30));
      CHECK(cr.det > 0.0);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cr.cov);
      CHECK(es.eigenvalues().minCoeff() > 0.0);
    }
  }
}

TEST_CASE("large-m matrix times its closed-form inverse is the identity") {
  for (double p : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    const AsymptoticResult ar = asymptotic_matrix(p);
    const Eigen::Matrix3d prod = ar.cov * ar.inv;
    CHECK((prod - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-8);
    // and against straight numerical inversion
    const Eigen::Matrix3d num_inv = ar.cov.inverse();
    CHECK((ar.inv - num_inv).cwiseAbs().maxCoeff() <
          1e-8 * num_inv.cwiseAbs().maxCoeff());
    CHECK(ar.cov(0, 0) == doctest::Approx(p * (1.0 - p)).epsilon(1e-12));
  }
}

TEST_CASE("finite-m covariance converges to the large-m matrix") {
  const double p = 0.5;
  const int m = 10000;
  const CovarianceResult finite = covariance_matrix(p, m);
  const AsymptoticResult ar = asymptotic_matrix(p);
  CHECK((finite.cov - ar.cov).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("simulated null images reproduce the closed-form moments") {
  const double lambda = 400.0;
  const int m = 20, c = 1;
  const NullMoments nm = null_moments(lambda, m, c);
  const int reps = 100000;
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  Eigen::Vector3d sum2 = Eigen::Vector3d::Zero();
  for (int rep = 0; rep < reps; ++rep) {
    RngStream rng(8080, 1, static_cast<std::uint64_t>(rep));
    PointPattern pattern;
    const std::int64_t n = rng.poisson(lambda);
    for (std::int64_t i = 0; i < n; ++i)
      pattern.push_back(rng.next_double(), rng.next_double());
    const MinkowskiTriple t = functionals(threshold(bin_points(pattern, m), c));
    const Eigen::Vector3d v{t.area, t.perimeter, t.euler};
    sum += v;
    sum2 += v.cwiseProduct(v);
  }
  for (int i = 0; i < 3; ++i) {
    const double mean = sum[i] / reps;
    const double var = sum2[i] / reps - mean * mean;
    const double se = std::sqrt(nm.cov(i, i) / reps);
    CHECK(std::abs(mean - nm.mean[i]) < 4.0 * se);
    CHECK(std::abs(var / nm.cov(i, i) - 1.0) < 0.05);
  }
}

TEST_CASE("null_moments assembles everything and guards degeneracy") {
  const NullMoments nm = null_moments(1000.0, 31, 1);
  CHECK(nm.p == doctest::Approx(exceedance_prob(1000.0, 31, 1)));
  CHECK(nm.mean[0] == doctest::Approx(31.0 * nm.p));
  CHECK(nm.cov(0, 1) == doctest::Approx(nm.cov(1, 0)));
  CHECK_THROWS(null_moments(1e-12, 31, 5));
}
