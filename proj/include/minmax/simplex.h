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

#ifndef MINMAX_SIMPLEX_H_
#define MINMAX_SIMPLEX_H_

#include <cmath>
#include <cstdint>
#include <vector>

#include "minmax/rational.h"

namespace minmax {

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

// minimize objective . x  subject to  rows,  x >= 0.
template <typename Scalar>
struct LinearProgram {
  struct Row {
    std::vector<Scalar> coefficients;  // one per variable
    RowSense sense = RowSense::kLessEqual;
    Scalar rhs = Scalar(0);
  };
  int num_variables = 0;
  std::vector<Scalar> objective;
  std::vector<Row> rows;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

template <typename Scalar>
struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  Scalar objective_value = Scalar(0);
  std::vector<Scalar> x;
  // Phase-1 objective at termination; strictly positive iff infeasible.
  Scalar infeasibility = Scalar(0);
  int64_t iterations = 0;
};

struct SimplexOptions {
  // Pivot and optimality tolerance; ignored in exact arithmetic.
  double tolerance = 1e-9;
  // Iteration cap is `iteration_factor * (rows + columns)` of the tableau.
  int iteration_factor = 50;
};

// Dense tableau two-phase primal simplex with Bland's rule. Instantiated for
// double and Rational.
template <typename Scalar>
LpResult<Scalar> SolveDense(const LinearProgram<Scalar>& lp,
                            const SimplexOptions& options = {});

extern template LpResult<double> SolveDense(const LinearProgram<double>&,
                                            const SimplexOptions&);
extern template LpResult<Rational> SolveDense(const LinearProgram<Rational>&,
                                              const SimplexOptions&);

}  // namespace minmax

#endif  // MINMAX_SIMPLEX_H_
