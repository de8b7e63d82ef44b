// Copyright 2026 The minmax-select Authors
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

#ifndef MINMAX_TAIL_BOUND_H_
#define MINMAX_TAIL_BOUND_H_

namespace minmax {

// Chernoff upper-tail deviation for a sum of independent [0,1] variables
// with mean at most `mu`: `delta` solves
//
//   [e^delta / (1+delta)^(1+delta)]^mu = failure_prob
//
// and `deviation` = mu * delta, so Pr(X >= mu + deviation) <= failure_prob.
struct TailBound {
  double mu = 0;
  double failure_prob = 0;
  double delta = 0;
  double deviation = 0;
};

// Bisection to relative precision 1e-12 in delta. Requires mu >= 0 and
// failure_prob in (0, 1); mu below 1e-12 is raised to 1e-12.
TailBound DeltaBound(double mu, double failure_prob);

// (1+delta) ln(1+delta) - delta, the per-unit-mass Chernoff exponent.
double ChernoffExponent(double delta);

// e ln(2K) / ln(e ln(2K)), the closed-form upper bound on the deviation at
// mu = 1 and failure probability 1/(2K).
double ClosedFormDeviation(double num_scenarios);

}  // namespace minmax

#endif  // MINMAX_TAIL_BOUND_H_
