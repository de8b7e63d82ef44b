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

#include "minmax/rounding.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace minmax {
namespace {

bool IsIntegral(double v) { return v == 0.0 || v == 1.0; }

double SnapTiny(double v) {
  if (std::fabs(v) <= 1e-12) return 0.0;
  if (std::fabs(v - 1.0) <= 1e-12) return 1.0;
  return v;
}

RoundingOutcome FromBinary(std::vector<int> y) {
  RoundingOutcome out;
  for (size_t i = 0; i < y.size(); ++i) {
    if (y[i]) out.selected.push_back(static_cast<int>(i));
  }
  out.y = std::move(y);
  return out;
}

}  // namespace

int RoundingOutcome::Cardinality() const {
  return std::accumulate(y.begin(), y.end(), 0);
}

std::vector<double> SnapToIntegralMass(std::span<const double> x,
                                       double tolerance) {
  std::vector<double> v(x.begin(), x.end());
  for (size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]) || v[i] < -tolerance || v[i] > 1.0 + tolerance) {
      throw RoundingError("entry " + std::to_string(i) + " outside [0,1]");
    }
    if (v[i] <= tolerance) v[i] = 0.0;
    if (v[i] >= 1.0 - tolerance) v[i] = 1.0;
  }
  const double mass = std::accumulate(v.begin(), v.end(), 0.0);
  const double target = std::round(mass);
  const double slack = tolerance * std::max<double>(1.0, v.size());
  if (std::fabs(mass - target) > slack) {
    throw RoundingError("non-integral total mass " + std::to_string(mass));
  }
  double residual = target - mass;
  if (residual == 0.0) return v;
  std::vector<size_t> fractional;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!IsIntegral(v[i])) fractional.push_back(i);
  }
  std::stable_sort(fractional.begin(), fractional.end(),
                   [&](size_t a, size_t b) { return v[a] > v[b]; });
  for (size_t i : fractional) {
    if (residual == 0.0) break;
    const double moved = std::clamp(v[i] + residual, 0.0, 1.0);
    residual -= moved - v[i];
    v[i] = moved;
  }
  return v;
}

int PairingWalk(
    std::vector<double>& x, const PairChooser& choose,
    const std::function<void(int, int, const std::vector<double>&)>& on_step) {
  const int n = static_cast<int>(x.size());
  const double target = std::round(std::accumulate(x.begin(), x.end(), 0.0));
  int steps = 0;
  int carry = -1;
  for (int idx = 0; idx < n; ++idx) {
    if (IsIntegral(x[idx])) continue;
    if (carry < 0) {
      carry = idx;
      continue;
    }
    const int i = carry, j = idx;
    const double xi = x[i], xj = x[j];
    const double pair_mass = xi + xj;
    const double d1 = std::min(1.0 - xi, xj);
    const double d2 = std::min(xi, 1.0 - xj);
    if (choose(i, j, d1, d2)) {
      if (1.0 - xi <= xj) {
        x[i] = 1.0;
        x[j] = SnapTiny(pair_mass - 1.0);
      } else {
        x[j] = 0.0;
        x[i] = SnapTiny(pair_mass);
      }
    } else {
      if (xi <= 1.0 - xj) {
        x[i] = 0.0;
        x[j] = SnapTiny(pair_mass);
      } else {
        x[j] = 1.0;
        x[i] = SnapTiny(pair_mass - 1.0);
      }
    }
    ++steps;
    if (on_step) on_step(i, j, x);
    if (!IsIntegral(x[i])) {
      carry = i;
    } else if (!IsIntegral(x[j])) {
      carry = j;
    } else {
      carry = -1;
    }
  }
  if (carry >= 0) {
    // The lone leftover entry is integral up to floating error; the exact
    // total decides which side it lands on.
    double others = 0.0;
    for (int i = 0; i < n; ++i) {
      if (i != carry) others += x[i];
    }
    const double last = target - others;
    if (std::fabs(last) > 1e-6 && std::fabs(last - 1.0) > 1e-6) {
      throw RoundingError("pairing walk left a fractional entry");
    }
    x[carry] = last > 0.5 ? 1.0 : 0.0;
  }
  return steps;
}

RoundingOutcome RandomizedRound(std::span<const double> x, uint64_t seed) {
  std::vector<double> v = SnapToIntegralMass(x);
  std::mt19937_64 rng(seed);
  const int steps = PairingWalk(v, [&](int, int, double d1, double d2) {
    return UniformUnit(rng) < d2 / (d1 + d2);
  });
  std::vector<int> y(v.size());
  for (size_t i = 0; i < v.size(); ++i) y[i] = v[i] > 0.5 ? 1 : 0;
  RoundingOutcome out = FromBinary(std::move(y));
  out.seed = seed;
  out.generator = kGeneratorName;
  out.steps = steps;
  out.path = "dependent";
  return out;
}

RoundingOutcome IndependentRound(std::span<const double> x, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> y(x.size());
  for (size_t i = 0; i < x.size(); ++i) y[i] = UniformUnit(rng) < x[i] ? 1 : 0;
  RoundingOutcome out = FromBinary(std::move(y));
  out.seed = seed;
  out.generator = kGeneratorName;
  out.path = "independent";
  return out;
}

void AttachRowValues(const Matrix<double>& a, RoundingOutcome& outcome) {
  std::vector<double> y(outcome.y.begin(), outcome.y.end());
  outcome.row_values = Multiply(a, std::span<const double>(y));
}

}  // namespace minmax
