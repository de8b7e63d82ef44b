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

#ifndef MINMAX_ROUNDING_H_
#define MINMAX_ROUNDING_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "minmax/matrix.h"

namespace minmax {

class RoundingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kSnapTolerance = 1e-9;
inline constexpr const char* kGeneratorName = "mt19937_64";

// A binary rounding y of a fractional vector x together with whatever the
// producing backend can certify about it.
struct RoundingOutcome {
  std::vector<int> y;         // entries in {0, 1}
  std::vector<int> selected;  // {i | y_i = 1}, ascending
  // (A y)_r when a matrix was supplied.
  std::vector<double> row_values;
  // Per-row upper bound on (A y)_r guaranteed by the backend, if any.
  std::vector<double> row_bounds;
  // Randomized backends: the generator and seed that replay this run.
  std::optional<uint64_t> seed;
  std::string generator;
  // Derandomized backends: pessimistic estimator value before the first and
  // after every pairing step.
  std::vector<double> estimator_trace;
  int steps = 0;
  std::string path;

  int Cardinality() const;
};

// Snaps entries within `tolerance` of 0 or 1, checks that the total mass is
// within n * tolerance of an integer, and moves the residual onto the largest
// fractional entries so the mass is integral. Throws RoundingError otherwise.
std::vector<double> SnapToIntegralMass(std::span<const double> x,
                                       double tolerance = kSnapTolerance);

// Which way to move a pair (i, j) of fractional entries:
//   first branch:  x_i += d1, x_j -= d1   with d1 = min(1 - x_i, x_j)
//   second branch: x_i -= d2, x_j += d2   with d2 = min(x_i, 1 - x_j)
// Returns true for the first branch.
using PairChooser = std::function<bool(int i, int j, double d1, double d2)>;

// Walks the fractional entries of `x` lowest index first, repeatedly moving
// mass inside the two lowest-index fractional entries until at most one
// remains, which the integral total then fixes. `x` must already have
// integral mass (see SnapToIntegralMass); `on_step` sees the vector after
// each move. Returns the number of pairing steps.
int PairingWalk(std::vector<double>& x, const PairChooser& choose,
                const std::function<void(int i, int j, const std::vector<double>&)>&
                    on_step = nullptr);

// Dependent randomized rounding: sum y = sum x exactly, Pr(y_i = 1) = x_i.
RoundingOutcome RandomizedRound(std::span<const double> x, uint64_t seed);

// Independent rounding, Pr(y_i = 1) = x_i with no cardinality guarantee.
RoundingOutcome IndependentRound(std::span<const double> x, uint64_t seed);

// Fills row_values from `a`.
void AttachRowValues(const Matrix<double>& a, RoundingOutcome& outcome);

// Uniform double in [0, 1) from the top 53 bits of one 64-bit draw.
template <typename Engine>
double UniformUnit(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace minmax

#endif  // MINMAX_ROUNDING_H_
