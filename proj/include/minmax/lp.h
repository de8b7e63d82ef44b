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

#ifndef MINMAX_LP_H_
#define MINMAX_LP_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "minmax/instance.h"
#include "minmax/rational.h"

namespace minmax {

// Raised when the simplex iteration cap is hit.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LpArithmetic {
  kAuto,   // exact when the tableau is small, floating point otherwise
  kExact,  // GMP rationals throughout
  kFloat,  // doubles with 1e-9 tolerances
};

struct LpOptions {
  LpArithmetic arithmetic = LpArithmetic::kAuto;
  // kAuto switches to floating point above this many tableau cells.
  long exact_cell_limit = 3'000;
  double tolerance = 1e-9;
};

// The threshold LP for a given C: items whose cost is at most C in every
// scenario, cardinality p, and every scenario total at most C.
struct LpModel {
  Rational threshold;
  std::vector<int> items;  // I_C, ascending
  int p = 0;
};

LpModel BuildModel(const Instance& inst, const Rational& threshold);

// x is indexed like `items`; every item outside `items` is implicitly 0.
struct FractionalSolution {
  std::vector<int> items;
  std::vector<Rational> x;
  // max over scenarios of sum_i c_{S,i} x_i, computed exactly from x.
  Rational attained_value;
  bool exact = false;

  std::vector<double> values() const { return ToDoubles(x); }
  Rational Mass() const;
};

struct MinMaxResult {
  bool feasible = false;
  Rational value;  // optimal max scenario cost when feasible
  FractionalSolution solution;
};

// min z  s.t.  sum_i c_{S,i} x_i <= z for all S,  sum_i x_i = p,
// x in [0,1]^items.  Infeasible iff |items| < p.
MinMaxResult MinMaxValue(const Instance& inst, const std::vector<int>& items,
                         const LpOptions& options = {});

struct FeasibilityResult {
  bool feasible = false;
  FractionalSolution solution;  // set when feasible
  // When infeasible: how far the best attainable value exceeds C, or the
  // cardinality shortfall p - |I_C| when I_C is too small.
  Rational certificate;
};

FeasibilityResult LpFeasible(const Instance& inst, const Rational& threshold,
                             const LpOptions& options = {});

struct MinimalThreshold {
  Rational value;  // smallest C with the threshold LP feasible
  FractionalSolution solution;
  // Distinct item max-costs, ascending: the points where I_C changes.
  std::vector<Rational> breakpoints;
  int lp_solves = 0;
};

MinimalThreshold MinimalC(const Instance& inst, const LpOptions& options = {});

}  // namespace minmax

#endif  // MINMAX_LP_H_
