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

namespace minkcsr {

// Regularized incomplete gamma functions P(a,x) and Q(a,x).
double regularized_gamma_lower(double a, double x);
double regularized_gamma_upper(double a, double x);

// Upper tail of the chi-square distribution with df degrees of freedom.
double chi_squared_upper_tail(double stat, int df);

// Quantile of the chi-square distribution.
double chi_squared_quantile(double prob, int df);

// CDF of the F distribution with (d1, d2) degrees of freedom.
double f_distribution_cdf(double x, double d1, double d2);

}  // namespace minkcsr
