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

#include "minmax/tail_bound.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace minmax {

double ChernoffExponent(double delta) {
  return (1.0 + delta) * std::log1p(delta) - delta;
}

TailBound DeltaBound(double mu, double failure_prob) {
  if (!(failure_prob > 0.0 && failure_prob < 1.0)) {
    throw std::invalid_argument("failure probability must lie in (0, 1)");
  }
  if (!(mu >= 0.0)) throw std::invalid_argument("mu must be nonnegative");
  TailBound out;
  out.mu = std::max(mu, 1e-12);
  out.failure_prob = failure_prob;
  // ChernoffExponent is strictly increasing on (0, inf) from 0.
  const double target = -std::log(failure_prob) / out.mu;
  double lo = 0.0, hi = 1.0;
  int guard = 0;
  while (ChernoffExponent(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 2000) throw std::runtime_error("DeltaBound: no bracket");
  }
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (ChernoffExponent(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-13 * hi) break;
  }
  // hi satisfies the equation from above, so the tail estimate at hi is
  // at most failure_prob.
  out.delta = hi;
  out.deviation = out.mu * out.delta;
  return out;
}

double ClosedFormDeviation(double num_scenarios) {
  const double l = std::log(2.0 * num_scenarios);
  return std::numbers::e * l / std::log(std::numbers::e * l);
}

}  // namespace minmax
