// Copyright 2026 The agvplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AGV_EVALSTATS_SPECIAL_FUNCTIONS_HPP_
#define AGV_EVALSTATS_SPECIAL_FUNCTIONS_HPP_

namespace agv::evalstats {

// Regularized incomplete beta I_x(a, b), a, b > 0, x in [0, 1].
double incomplete_beta(double a, double b, double x);

// Regularized lower / upper incomplete gamma P(a, x), Q(a, x); a > 0, x >= 0.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Two-sided Student-t tail probability P(|T| >= |t|), df >= 1.
double students_t_sf2(double t, int df);

// Chi-square survival function P(X >= x), df >= 1.
double chi_square_sf(double x, int df);

}  // namespace agv::evalstats

#endif  // AGV_EVALSTATS_SPECIAL_FUNCTIONS_HPP_
