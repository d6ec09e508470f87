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

#include "moments.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "error.hpp"
#include "minkowski.hpp"

namespace minkcsr {

double exceedance_prob_kappa(double kappa, int c) {
  if (!(kappa > 0.0)) throw_invalid("exceedance_prob: kappa must be positive");
  if (c < 1) throw_invalid("exceedance_prob: c must be >= 1");
  if (kappa > 700.0) {
    // log-space: log-sum-exp of the first c Poisson terms.
    double lmax = -HUGE_VAL;
    std::vector<double> logs(static_cast<std::size_t>(c));
    for (int k = 0; k < c; ++k) {
      logs[k] = -kappa + k * std::log(kappa) - std::lgamma(k + 1.0);
      if (logs[k] > lmax) lmax = logs[k];
    }
    double s = 0.0;
    for (int k = 0; k < c; ++k) s += std::exp(logs[k] - lmax);
    return -std::expm1(lmax + std::log(s));
  }
  double term = std::exp(-kappa);
  double below = term;
  for (int k = 1; k < c; ++k) {
    term *= kappa / static_cast<double>(k);
    below += term;
  }
  double p = 1.0 - below;
  return p < 0.0 ? 0.0 : p;
}

double exceedance_prob(double lambda, int m, int c) {
  if (!(lambda > 0.0)) throw_invalid("exceedance_prob: lambda must be positive");
  if (m < 3) throw_invalid("exceedance_prob: m must be >= 3");
  return exceedance_prob_kappa(lambda / (static_cast<double>(m) * m), c);
}

Eigen::Vector3d mean_vector(double p, int m) {
  if (!(p >= 0.0 && p <= 1.0)) throw_invalid("mean_vector: p must be in [0,1]");
  if (m < 3) throw_invalid("mean_vector: m must be >= 3");
  const double md = m;
  const double q = 1.0 - p;
  const double mu_a = md * p;
  const double mu_p = 4.0 * p * (md - (md - 1.0) * p);
  const double mu_chi =
      (p + 2.0 * (md - 1.0) * p * q +
       (md - 1.0) * (md - 1.0) * p * q * ((p - 3.0) * p + 1.0)) /
      md;
  return {mu_a, mu_p, mu_chi};
}

Eigen::Vector3d variance_vector(double p, int m) {
  if (!(p >= 0.0 && p <= 1.0)) throw_invalid("variance_vector: p must be in [0,1]");
  if (m < 3) throw_invalid("variance_vector: m must be >= 3");
  const double md = m;
  const double m2 = md * md;
  const double q = 1.0 - p;
  const double pq = p * q;

  const double var_a = pq;
  const double var_p =
      8.0 / m2 * pq *
      (((7.0 * m2 - 13.0 * md + 4.0) * p - 7.0 * md * (md - 1.0)) * p +
       2.0 * m2);
  // Degree-7 polynomial, Horner in p.
  const double var_chi =
      1.0 / m2 * pq *
      ((((((((9.0 * m2 - 30.0 * md + 25.0) * p -
             (59.0 * m2 - 194.0 * md + 159.0)) *
                p +
            (137.0 * m2 - 434.0 * md + 341.0)) *
               p -
           (139.0 * m2 - 406.0 * md + 291.0)) *
              p +
          (64.0 * m2 - 158.0 * md + 94.0)) *
             p -
         (12.0 * m2 - 18.0 * md + 6.0)) *
            p +
        m2));
  return {var_a, var_p, var_chi};
}

Eigen::Vector3d covariance_vector(double p, int m) {
  if (!(p >= 0.0 && p <= 1.0))
    throw_invalid("covariance_vector: p must be in [0,1]");
  if (m < 3) throw_invalid("covariance_vector: m must be >= 3");
  const double md = m;
  const double m2 = md * md;
  const double q = 1.0 - p;
  const double pq = p * q;

  const double cov_ap = 1.0 / m2 * pq * (4.0 * m2 * (1.0 - 2.0 * p) + 8.0 * md * p);
  const double mm1 = md - 1.0;
  const double cov_achi =
      1.0 / m2 * pq *
      (((-4.0 * mm1 * mm1 * p + 12.0 * mm1 * mm1) * p -
        4.0 * mm1 * (2.0 * md - 1.0)) *
           p +
       m2);
  const double cov_pchi =
      4.0 / m2 * pq *
      (((((6.0 * m2 - 16.0 * md + 10.0) * p - (22.0 * m2 - 56.0 * md + 34.0)) *
             p +
         (23.0 * m2 - 49.0 * md + 24.0)) *
            p -
        (9.0 * m2 - 13.0 * md + 4.0)) *
           p +
       m2);
  return {cov_ap, cov_achi, cov_pchi};
}

namespace {

double closed_form_det(double p, int m) {
  const double md = m;
  const double m2 = md * md;
  const double m3 = m2 * md;
  const double m4 = m3 * md;
  const double m5 = m4 * md;
  const double m6 = m5 * md;
  const double q = 1.0 - p;
  const double c6 = -std::pow(m2 - 3.0 * md + 4.0, 3);
  const double c5 = 2.0 * (2.0 * m2 - 5.0 * md + 6.0) * (m2 - 3.0 * md + 4.0) *
                    (m2 - 5.0 * md + 8.0);
  const double c4 = -4.0 * m6 + 50.0 * m5 - 280.0 * m4 + 878.0 * m3 -
                    1580.0 * m2 + 1552.0 * md - 704.0;
  const double c3 =
      -4.0 * m6 + 22.0 * m5 - 302.0 * m3 + 828.0 * m2 - 880.0 * md + 384.0;
  const double c2 = 11.0 * m6 - 77.0 * m5 + 229.0 * m4 - 275.0 * m3 +
                    56.0 * m2 + 112.0 * md - 64.0;
  const double c1 =
      -4.0 * md * (md - 1.0) *
      (2.0 * m4 - 9.0 * m3 + 20.0 * m2 - 18.0 * md + 4.0);
  const double c0 = 2.0 * m3 * std::pow(md - 1.0, 3);
  const double poly =
      ((((((c6 * p + c5) * p + c4) * p + c3) * p + c2) * p + c1) * p + c0);
  return 8.0 / m6 * std::pow(p, 5) * q * q * q * poly;
}

}  // namespace

CovarianceResult covariance_matrix(double p, int m) {
  if (!(p > 0.0 && p < 1.0)) {
    throw_degenerate("covariance_matrix: p = " + std::to_string(p) +
                     " gives a singular moment matrix");
  }
  const Eigen::Vector3d v = variance_vector(p, m);
  const Eigen::Vector3d c = covariance_vector(p, m);
  Eigen::Matrix3d cov;
  cov << v[0], c[0], c[1],
         c[0], v[1], c[2],
         c[1], c[2], v[2];
  return {cov, closed_form_det(p, m)};
}

AsymptoticResult asymptotic_matrix(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw_degenerate("asymptotic_matrix: p must be in (0,1)");
  const double q = 1.0 - p;
  const double pq = p * q;
  Eigen::Matrix3d cov;
  const double e11 = 1.0;
  const double e12 = 4.0 - 8.0 * p;
  const double e13 = ((-4.0 * p + 12.0) * p - 8.0) * p + 1.0;
  const double e22 = (56.0 * p - 56.0) * p + 16.0;
  const double e23 = (((24.0 * p - 88.0) * p + 92.0) * p - 36.0) * p + 4.0;
  const double e33 =
      ((((((9.0 * p - 59.0) * p + 137.0) * p - 139.0) * p + 64.0) * p - 12.0) *
           p +
       1.0);
  cov << e11, e12, e13, e12, e22, e23, e13, e23, e33;
  cov *= pq;

  // Closed-form inverse, prefactor 1 / (p^2 (1-p)^4 (p^2 - 2)).
  const double pref = 1.0 / (p * p * q * q * q * q * (p * p - 2.0));
  const double i11 =
      (((((-9.0 * p + 43.0) * p - 87.0) * p + 103.0) * p - 76.0) * p + 30.0) *
          p -
      5.0;
  const double i12 =
      ((((-3.0 * p + 13.5) * p - 22.0) * p + 17.5) * p - 8.0) * p + 1.5;
  const double i13 = ((4.0 * p - 8.0) * p + 4.0) * p - 1.0;
  const double i22 = (((-0.875 * p + 3.75) * p - 5.125) * p + 2.5) * p - 0.5;
  const double i23 = (p - 2.0) * p + 0.5;
  const double i33 = -1.0;
  Eigen::Matrix3d inv;
  inv << i11, i12, i13, i12, i22, i23, i13, i23, i33;
  inv *= pref;
  return {cov, inv};
}

NullMoments null_moments(double lambda, int m, int c) {
  NullMoments out;
  out.lambda = lambda;
  out.m = m;
  out.c = c;
  out.p = exceedance_prob(lambda, m, c);
  // Below ~1e-12 the complemented-sum recurrence is pure cancellation noise
  // and every downstream moment is meaningless.
  if (!(out.p > 1e-12 && out.p < 1.0 - 1e-12)) {
    throw_degenerate("null_moments: threshold probability " +
                     std::to_string(out.p) + " is degenerate (lambda = " +
                     std::to_string(lambda) + ", m = " + std::to_string(m) +
                     ", c = " + std::to_string(c) + ")");
  }
  out.mean = mean_vector(out.p, m);
  CovarianceResult cr = covariance_matrix(out.p, m);
  out.cov = cr.cov;
  out.det_closed_form = cr.det;
  AsymptoticResult ar = asymptotic_matrix(out.p);
  out.asym_cov = ar.cov;
  out.asym_inv = ar.inv;
  return out;
}

OracleMoments enumeration_oracle(int m, double p) {
  if (m != 3 && m != 4)
    throw_invalid("enumeration_oracle: only m in {3,4} is enumerable");
  if (!(p >= 0.0 && p <= 1.0))
    throw_invalid("enumeration_oracle: p must be in [0,1]");
  const int n = m * m;
  // Accumulate integer-valued raw sums grouped by black-cell count, so the
  // only floating-point work is the final binomial-weighted combination.
  // Columns: A, P, X, A^2, P^2, X^2, AP, AX, PX with A in quarters, P in
  // edges, X in Euler quarters (products in the corresponding mixed units).
  std::vector<std::array<std::int64_t, 9>> sums(
      static_cast<std::size_t>(n) + 1, {0, 0, 0, 0, 0, 0, 0, 0, 0});
  BinaryImage img = BinaryImage::blank(m, 1);
  const long total = 1L << n;
  for (long bits = 0; bits < total; ++bits) {
    int k = 0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const int b = static_cast<int>((bits >> (i * m + j)) & 1);
        img.cells[static_cast<std::size_t>(i + 1) * (m + 2) + (j + 1)] =
            static_cast<std::uint8_t>(b);
        k += b;
      }
    }
    const FunctionalCounts fc = scan_image(img);
    const std::int64_t a = fc.area_quarters;
    const std::int64_t pe = fc.perimeter_edges;
    const std::int64_t x = fc.euler_quarters;
    auto& s = sums[static_cast<std::size_t>(k)];
    s[0] += a;
    s[1] += pe;
    s[2] += x;
    s[3] += a * a;
    s[4] += pe * pe;
    s[5] += x * x;
    s[6] += a * pe;
    s[7] += a * x;
    s[8] += pe * x;
  }
  std::array<double, 9> raw{};
  for (int k = 0; k <= n; ++k) {
    const double w = std::pow(p, k) * std::pow(1.0 - p, n - k);
    for (int col = 0; col < 9; ++col)
      raw[col] += w * static_cast<double>(sums[static_cast<std::size_t>(k)][col]);
  }
  const double md = m;
  const double fa = 1.0 / (4.0 * md);  // quarters -> scaled area
  const double fp = 1.0 / md;          // edges -> scaled perimeter
  const double fx = 1.0 / (4.0 * md);  // quarters -> scaled Euler
  const double ea = raw[0] * fa, ep = raw[1] * fp, ex = raw[2] * fx;
  OracleMoments out;
  out.mean = {ea, ep, ex};
  out.cov << raw[3] * fa * fa - ea * ea, raw[6] * fa * fp - ea * ep,
      raw[7] * fa * fx - ea * ex, raw[6] * fa * fp - ea * ep,
      raw[4] * fp * fp - ep * ep, raw[8] * fp * fx - ep * ex,
      raw[7] * fa * fx - ea * ex, raw[8] * fp * fx - ep * ex,
      raw[5] * fx * fx - ex * ex;
  return out;
}

}  // namespace minkcsr
