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

#include <Eigen/Dense>

namespace minkcsr {

// Null-hypothesis moments of the scaled functional triple (area, perimeter,
// Euler characteristic) for a homogeneous process with known intensity.
struct NullMoments {
  double lambda = 0.0;
  int m = 0;
  int c = 0;
  double p = 0.0;  // probability that a bin count reaches the threshold
  Eigen::Vector3d mean;
  Eigen::Matrix3d cov;
  double det_closed_form = 0.0;
  Eigen::Matrix3d asym_cov;
  Eigen::Matrix3d asym_inv;
};

// P(Poisson(lambda/m^2) >= c) via a multiplicative term recurrence; switches
// to log-space accumulation for very large means so e^{-kappa} never
// underflows intermediate terms.
double exceedance_prob(double lambda, int m, int c);
double exceedance_prob_kappa(double kappa, int c);

// Closed-form mean vector (mu_A, mu_P, mu_chi).
Eigen::Vector3d mean_vector(double p, int m);

// Closed-form variances (sigma^2_A, sigma^2_P, sigma^2_chi).
Eigen::Vector3d variance_vector(double p, int m);

// Closed-form covariances (sigma_AP, sigma_Achi, sigma_Pchi).
Eigen::Vector3d covariance_vector(double p, int m);

// Assembled covariance matrix together with its closed-form determinant.
struct CovarianceResult {
  Eigen::Matrix3d cov;
  double det;
};
CovarianceResult covariance_matrix(double p, int m);

// Large-m covariance matrix and its closed-form inverse. The matrix is the
// exact limit of the finite-m formulas; the published form of the limit has
// a sign-slip in the area/Euler entry (-4p where the limit gives -8p) while
// the published inverse matches the exact limit, so the corrected matrix and
// the verbatim inverse are mutually consistent.
struct AsymptoticResult {
  Eigen::Matrix3d cov;
  Eigen::Matrix3d inv;
};
AsymptoticResult asymptotic_matrix(double p);

NullMoments null_moments(double lambda, int m, int c);

// Exhaustive-enumeration oracle: iterates every interior coloring of an
// m x m image (m in {3,4}), weights by p^#black (1-p)^#white, and measures
// the triple with the window scan. Independent of every closed form above.
struct OracleMoments {
  Eigen::Vector3d mean;
  Eigen::Matrix3d cov;
};
OracleMoments enumeration_oracle(int m, double p);

}  // namespace minkcsr
