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

#ifndef MINMAX_SOLVER_H_
#define MINMAX_SOLVER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minmax/instance.h"
#include "minmax/lp.h"
#include "minmax/rational.h"
#include "minmax/rounding.h"

namespace minmax {

enum class Method { kRandom, kDerand, kRam, kExact };

std::string MethodName(Method method);
// Throws std::invalid_argument on an unknown name.
Method ParseMethod(const std::string& name);

struct StageTimings {
  int64_t lp_us = 0;
  int64_t rounding_us = 0;
  int64_t total_us = 0;
};

struct SolveReport {
  Method method = Method::kDerand;
  // Smallest C with the threshold LP feasible; a lower bound on the optimum.
  Rational lower_bound;
  Selection selection;
  // max_cost / lower_bound; 1 when both are 0.
  double approx_ratio = 1.0;
  // A-priori bound on approx_ratio: 1 + Delta(1, 1/(2K)) for the
  // estimator-backed methods, the explicit route bound for ram.
  double certified_bound = 0.0;
  std::optional<uint64_t> seed;
  StageTimings timings;

  // Diagnostics.
  FractionalSolution fractional;
  RoundingOutcome rounding;
  // Row values and masses of the rounding on the cost matrix scaled by
  // 1 / lower_bound (empty on the zero-threshold path).
  std::vector<double> scaled_row_values;
  std::vector<double> scaled_row_masses;
  int lp_solves = 0;
  int64_t subsets_enumerated = 0;
};

struct SolveOptions {
  LpOptions lp;
  // Used by Method::kRandom; drawn from std::random_device when unset.
  std::optional<uint64_t> seed;
};

// LP lower bound, scaling to C = 1, then rounding with the chosen backend.
// For kDerand and kRam the backend's row guarantee is checked on the output.
SolveReport SolveApprox(const Instance& inst, Method method,
                        const SolveOptions& options = {});

inline constexpr int64_t kDefaultExactBudget = 10'000'000;

// Exhaustive search over all p-subsets (with cost-based pruning). Throws
// BudgetError when C(n, p) exceeds `budget`.
SolveReport SolveExact(const Instance& inst,
                       int64_t budget = kDefaultExactBudget,
                       const LpOptions& lp_options = {});

// Dispatches to SolveExact or SolveApprox.
SolveReport Solve(const Instance& inst, Method method,
                  const SolveOptions& options = {},
                  int64_t exact_budget = kDefaultExactBudget);

struct GapReport {
  int k = 0, p = 0, n = 0;
  int64_t num_scenarios = 0;
  Rational lp_value;    // minimal threshold C*
  bool witness_ok = false;  // the 1/k witness is exactly LP_1-feasible
  Cost ip_value = 0;    // exact integral optimum
  double gap = 0.0;     // ip_value / lp_value
  // ln K / ln ln K; NaN when K <= e.
  double log_ratio = 0.0;
  bool holds = false;   // lp_value <= 1, witness_ok, ip_value >= k, gap >= k
};

// Builds the gap instance (p defaults to k, n to k^2 + (p - k)) and checks
// the LP bound, the integral optimum and their ratio.
GapReport VerifyGap(int k, std::optional<int> p = std::nullopt,
                    std::optional<int> n = std::nullopt,
                    int64_t budget = kDefaultExactBudget);

}  // namespace minmax

#endif  // MINMAX_SOLVER_H_
