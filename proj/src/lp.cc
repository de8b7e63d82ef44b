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

#include "minmax/lp.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "minmax/simplex.h"

namespace minmax {
namespace {

long TableauCells(int num_scenarios, int num_items) {
  const long rows = num_scenarios + 1L + num_items;
  const long cols = 2L * num_items + 2 + num_scenarios;
  return rows * (cols + 1);
}

template <typename Scalar>
LinearProgram<Scalar> MinMaxProgram(const Instance& inst,
                                    const std::vector<int>& items) {
  const int k = static_cast<int>(items.size());
  LinearProgram<Scalar> lp;
  lp.num_variables = k + 1;  // x_0..x_{k-1}, z
  lp.objective.assign(k + 1, Scalar(0));
  lp.objective[k] = Scalar(1);
  for (int s = 0; s < inst.num_scenarios(); ++s) {
    typename LinearProgram<Scalar>::Row row;
    row.coefficients.assign(k + 1, Scalar(0));
    for (int j = 0; j < k; ++j) {
      if constexpr (std::is_same_v<Scalar, Rational>) {
        row.coefficients[j] = FromInt(inst.cost(s, items[j]));
      } else {
        row.coefficients[j] = static_cast<double>(inst.cost(s, items[j]));
      }
    }
    row.coefficients[k] = Scalar(-1);
    row.sense = RowSense::kLessEqual;
    row.rhs = Scalar(0);
    lp.rows.push_back(std::move(row));
  }
  typename LinearProgram<Scalar>::Row cardinality;
  cardinality.coefficients.assign(k + 1, Scalar(1));
  cardinality.coefficients[k] = Scalar(0);
  cardinality.sense = RowSense::kEqual;
  cardinality.rhs = Scalar(inst.p());
  lp.rows.push_back(std::move(cardinality));
  for (int j = 0; j < k; ++j) {
    typename LinearProgram<Scalar>::Row bound;
    bound.coefficients.assign(k + 1, Scalar(0));
    bound.coefficients[j] = Scalar(1);
    bound.sense = RowSense::kLessEqual;
    bound.rhs = Scalar(1);
    lp.rows.push_back(std::move(bound));
  }
  return lp;
}

Rational AttainedValue(const Instance& inst, const std::vector<int>& items,
                       const std::vector<Rational>& x) {
  Rational best(0);
  for (int s = 0; s < inst.num_scenarios(); ++s) {
    Rational total(0);
    for (size_t j = 0; j < items.size(); ++j) {
      const Cost c = inst.cost(s, items[j]);
      if (c != 0 && x[j] != 0) total += FromInt(c) * x[j];
    }
    if (s == 0 || total > best) best = total;
  }
  return best;
}

[[noreturn]] void IterationCap(const Instance& inst, const std::string& context) {
  throw SolverError("LP iteration cap exceeded on instance '" + inst.name() +
                    "' (" + context + ")");
}

MinMaxResult MinMaxValueImpl(const Instance& inst,
                             const std::vector<int>& items,
                             const LpOptions& options,
                             const std::string& context) {
  MinMaxResult result;
  if (static_cast<int>(items.size()) < inst.p()) return result;
  bool exact = options.arithmetic == LpArithmetic::kExact;
  if (options.arithmetic == LpArithmetic::kAuto) {
    exact = TableauCells(inst.num_scenarios(), static_cast<int>(items.size())) <=
            options.exact_cell_limit;
  }
  SimplexOptions simplex;
  simplex.tolerance = options.tolerance;
  FractionalSolution& sol = result.solution;
  sol.items = items;
  sol.exact = exact;
  if (exact) {
    const auto lp = MinMaxProgram<Rational>(inst, items);
    auto res = SolveDense(lp, simplex);
    if (res.status == LpStatus::kIterationLimit) IterationCap(inst, context);
    if (res.status != LpStatus::kOptimal) {
      throw SolverError("min-max LP unexpectedly not optimal (" + context + ")");
    }
    sol.x.assign(res.x.begin(), res.x.begin() + items.size());
    result.value = res.objective_value;
  } else {
    const auto lp = MinMaxProgram<double>(inst, items);
    auto res = SolveDense(lp, simplex);
    if (res.status == LpStatus::kIterationLimit) IterationCap(inst, context);
    if (res.status != LpStatus::kOptimal) {
      throw SolverError("min-max LP unexpectedly not optimal (" + context + ")");
    }
    sol.x.reserve(items.size());
    for (size_t j = 0; j < items.size(); ++j) {
      const double v = std::clamp(res.x[j], 0.0, 1.0);
      sol.x.push_back(FromDouble(v));
    }
    const double v = std::max(0.0, res.objective_value);
    result.value = Rationalize(v, options.tolerance * std::max(1.0, v));
  }
  sol.attained_value = AttainedValue(inst, items, sol.x);
  result.feasible = true;
  return result;
}

bool WithinThreshold(const Rational& value, const Rational& threshold,
                     bool exact, double tolerance) {
  if (exact) return value <= threshold;
  const double c = ToDouble(threshold);
  return ToDouble(value) <= c + tolerance * std::max(1.0, c);
}

}  // namespace

Rational FractionalSolution::Mass() const {
  Rational total(0);
  for (const Rational& v : x) total += v;
  return total;
}

LpModel BuildModel(const Instance& inst, const Rational& threshold) {
  LpModel model;
  model.threshold = threshold;
  model.p = inst.p();
  for (int i = 0; i < inst.num_items(); ++i) {
    if (FromInt(inst.ItemMaxCost(i)) <= threshold) model.items.push_back(i);
  }
  return model;
}

MinMaxResult MinMaxValue(const Instance& inst, const std::vector<int>& items,
                         const LpOptions& options) {
  return MinMaxValueImpl(inst, items, options, "min-max value");
}

FeasibilityResult LpFeasible(const Instance& inst, const Rational& threshold,
                             const LpOptions& options) {
  if (sgn(threshold) < 0) throw std::invalid_argument("threshold must be >= 0");
  FeasibilityResult result;
  const LpModel model = BuildModel(inst, threshold);
  if (static_cast<int>(model.items.size()) < inst.p()) {
    result.certificate = Rational(inst.p() - static_cast<int>(model.items.size()));
    return result;
  }
  MinMaxResult mm = MinMaxValueImpl(inst, model.items, options,
                                    "C=" + ToString(threshold));
  if (WithinThreshold(mm.value, threshold, mm.solution.exact,
                      options.tolerance)) {
    result.feasible = true;
    result.solution = std::move(mm.solution);
  } else {
    result.certificate = mm.value - threshold;
  }
  return result;
}

MinimalThreshold MinimalC(const Instance& inst, const LpOptions& options) {
  MinimalThreshold out;
  std::set<Cost> distinct;
  for (int i = 0; i < inst.num_items(); ++i) distinct.insert(inst.ItemMaxCost(i));
  for (Cost t : distinct) out.breakpoints.push_back(FromInt(t));

  // On [t_j, t_{j+1}) the item set is fixed, so the smallest feasible C there
  // is max(t_j, V_j) with V_j the min-max value over I_{t_j}.
  std::vector<int> items;
  std::vector<Cost> item_max(inst.num_items());
  for (int i = 0; i < inst.num_items(); ++i) item_max[i] = inst.ItemMaxCost(i);
  std::optional<Rational> answer;
  const auto& bp = out.breakpoints;
  for (size_t j = 0; j < bp.size() && !answer; ++j) {
    items.clear();
    for (int i = 0; i < inst.num_items(); ++i) {
      if (FromInt(item_max[i]) <= bp[j]) items.push_back(i);
    }
    if (static_cast<int>(items.size()) < inst.p()) continue;
    MinMaxResult mm = MinMaxValueImpl(inst, items, options,
                                      "breakpoint " + ToString(bp[j]));
    ++out.lp_solves;
    Rational candidate = bp[j];
    if (!WithinThreshold(mm.value, bp[j], mm.solution.exact, options.tolerance)) {
      candidate = mm.value;
    }
    if (j + 1 == bp.size() || candidate < bp[j + 1]) answer = candidate;
  }
  if (!answer) {
    throw SolverError("no feasible threshold found for instance '" +
                      inst.name() + "'");
  }
  out.value = *answer;
  FeasibilityResult witness = LpFeasible(inst, out.value, options);
  ++out.lp_solves;
  if (!witness.feasible) {
    throw SolverError("threshold LP infeasible at its computed minimum " +
                      ToString(out.value));
  }
  out.solution = std::move(witness.solution);
  return out;
}

}  // namespace minmax
