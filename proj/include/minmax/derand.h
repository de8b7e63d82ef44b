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

#ifndef MINMAX_DERAND_H_
#define MINMAX_DERAND_H_

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "minmax/matrix.h"
#include "minmax/rational.h"
#include "minmax/rounding.h"

namespace minmax {

// Raghavan-style pessimistic estimator for the upper tails of A y, with y a
// dependent rounding of x. Row r contributes
//
//   prod_i (1 + x_i ((1+delta_r)^{a_ri} - 1)) / (1+delta_r)^{s_r + Delta_r}
//
// where s_r = (A x)_r at construction, delta_r and Delta_r come from
// DeltaBound(max(1, s_r), failure_prob). Every initial row term is at most
// failure_prob. Products are kept in log space.
class PessimisticEstimator {
 public:
  PessimisticEstimator(const Matrix<double>& a, std::span<const double> x,
                       double failure_prob);

  int rows() const { return growth_.rows(); }
  double value() const { return value_; }

  // Estimator value if x_i and x_j were replaced by the given values.
  double ValueAfterMove(int i, int j, double new_xi, double new_xj) const;

  // Commits new values for x_i and x_j.
  void Apply(int i, int j, double new_xi, double new_xj);

  // Rebuilds all running products from `x` and returns the fresh value,
  // without changing the state.
  double Recompute(std::span<const double> x) const;

  // Replaces the running state by a from-scratch evaluation at `x`.
  void Reset(std::span<const double> x);

  // s_r + Delta_r: the bound (A y)_r stays below once the estimator is < 1.
  const std::vector<double>& row_thresholds() const { return thresholds_; }
  const std::vector<double>& row_masses() const { return masses_; }
  const std::vector<double>& row_deltas() const { return deltas_; }

 private:
  double Term(int r, double log_product) const;
  double LogFactor(int r, int i, double xi) const {
    return std::log1p(xi * growth_(r, i));
  }

  std::vector<double> x_;
  Matrix<double> growth_;  // (1+delta_r)^{a_ri} - 1
  std::vector<double> masses_, deltas_, thresholds_, log_denominators_;
  std::vector<double> log_products_;
  double value_ = 0;
};

struct DerandOptions {
  // Per-row failure probability; defaults to 1 / (2 * rows).
  std::optional<double> failure_prob;
  int recompute_interval = 64;
  double drift_tolerance = 1e-8;
};

// Deterministic dependent rounding: the pairing walk of RandomizedRound with
// each coin flip replaced by the branch of smaller estimator value (first
// branch on ties). Guarantees sum y = sum x and (A y)_r < (A x)_r + Delta_r.
// Entries of `a` must lie in [0, 1].
RoundingOutcome DerandRound(const Matrix<double>& a, std::span<const double> x,
                            const DerandOptions& options = {});

// Binary layers A^(1..ell) with sum_j 2^-j A^(j) within 2^-ell of A
// entrywise, ell = max(1, ceil(log2 n)).
struct BitDecomposition {
  int ell = 0;
  std::vector<Matrix<uint8_t>> layers;

  Matrix<double> Approximation() const;
  // The (rows * ell) x n binary matrix, layer j occupying rows j*m .. j*m+m-1.
  Matrix<double> Stacked() const;
};

int BitDepth(int n);

// Entries equal to 1 become 1 - 2^-ell (all ones).
BitDecomposition BitDecompose(const Matrix<Rational>& a);
BitDecomposition BitDecompose(const Matrix<double>& a);

// One null-space move: eps is supported on `support`, A eps = 0 and
// sum eps = 0; x moved by `step` * eps.
template <typename T>
struct ReductionStep {
  std::vector<int> support;
  std::vector<T> eps;  // aligned with support
  T step_forward;      // largest t keeping x + t eps in the box
  T step_backward;     // largest t keeping x - t eps in the box
  T step;              // signed step actually applied
};

template <typename T>
struct ReductionResult {
  std::vector<T> x;
  std::vector<ReductionStep<T>> steps;
};

// Moves x inside {x' | A x' = A x, sum x' = sum x, 0 <= x' <= 1} until at
// most rows + 1 entries are fractional. Instantiated for double and Rational.
template <typename T>
ReductionResult<T> ReduceFractionals(const Matrix<T>& a, std::vector<T> x);

extern template ReductionResult<double> ReduceFractionals(const Matrix<double>&,
                                                          std::vector<double>);
extern template ReductionResult<Rational> ReduceFractionals(
    const Matrix<Rational>&, std::vector<Rational>);

// Tries every binary completion of the (at most rows + 1) fractional entries
// of x with the right total and keeps the one minimizing
// max_r (A y)_r / max(1, (A x)_r); earliest candidate wins ties.
RoundingOutcome ExhaustiveRound(const Matrix<double>& a,
                                std::span<const double> x);

// Rounding that needs only binary-matrix estimators. Uses the small-system
// route (ReduceFractionals + ExhaustiveRound) when 2^(rows+1) <= 2n, and the
// bit-decomposition route otherwise. row_bounds carry the explicit bound of
// whichever route ran.
RoundingOutcome RamRound(const Matrix<Rational>& a, std::span<const double> x);
RoundingOutcome RamRound(const Matrix<double>& a, std::span<const double> x);

bool UsesSmallSystemRoute(int rows, int cols);

}  // namespace minmax

#endif  // MINMAX_DERAND_H_
