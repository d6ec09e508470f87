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

#include "specfun.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "error.hpp"

namespace minkcsr {

double regularized_gamma_lower(double a, double x) {
  if (!(a > 0.0) || x < 0.0)
    throw_invalid("regularized_gamma_lower: need a > 0, x >= 0");
  return boost::math::gamma_p(a, x);
}

double regularized_gamma_upper(double a, double x) {
  if (!(a > 0.0) || x < 0.0)
    throw_invalid("regularized_gamma_upper: need a > 0, x >= 0");
  return boost::math::gamma_q(a, x);
}

double chi_squared_upper_tail(double stat, int df) {
  if (df < 1) throw_invalid("chi_squared_upper_tail: df must be >= 1");
  if (!(stat >= 0.0)) throw_invalid("chi_squared_upper_tail: stat must be >= 0");
  return boost::math::gamma_q(0.5 * df, 0.5 * stat);
}

double chi_squared_quantile(double prob, int df) {
  if (df < 1) throw_invalid("chi_squared_quantile: df must be >= 1");
  if (!(prob > 0.0 && prob < 1.0))
    throw_invalid("chi_squared_quantile: prob must be in (0,1)");
  boost::math::chi_squared_distribution<double> dist(df);
  return boost::math::quantile(dist, prob);
}

double f_distribution_cdf(double x, double d1, double d2) {
  if (!(d1 > 0.0) || !(d2 > 0.0))
    throw_invalid("f_distribution_cdf: degrees of freedom must be positive");
  if (x <= 0.0) return 0.0;
  double z = d1 * x / (d1 * x + d2);
  return boost::math::ibeta(0.5 * d1, 0.5 * d2, z);
}

}  // namespace minkcsr
