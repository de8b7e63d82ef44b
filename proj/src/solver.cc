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

#include "minmax/solver.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "minmax/derand.h"
#include "minmax/tail_bound.h"

namespace minmax {
namespace {

using Clock = std::chrono::steady_clock;

int64_t MicrosSince(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() -
                                                               start)
      .count();
}

double ApproxRatio(Cost max_cost, const Rational& lower_bound) {
  if (sgn(lower_bound) == 0) {
    return max_cost == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  }
  return ToDouble(Rational(FromInt(max_cost) / lower_bound));
}

double EstimatorCertifiedBound(int num_scenarios) {
  return 1.0 + DeltaBound(1.0, 1.0 / (2.0 * num_scenarios)).deviation;
}

}  // namespace

std::string MethodName(Method method) {
  switch (method) {
    case Method::kRandom:
      return "random";
    case Method::kDerand:
      return "derand";
    case Method::kRam:
      return "ram";
    case Method::kExact:
      return "exact";
  }
  return "unknown";
}

Method ParseMethod(const std::string& name) {
  if (name == "random") return Method::kRandom;
  if (name == "derand") return Method::kDerand;
  if (name == "ram") return Method::kRam;
  if (name == "exact") return Method::kExact;
  throw std::invalid_argument("unknown method '" + name + "'");
}

SolveReport SolveApprox(const Instance& inst, Method method,
                        const SolveOptions& options) {
  if (method == Method::kExact) {
    throw std::invalid_argument("SolveApprox: use SolveExact for exact");
  }
  const auto start = Clock::now();
  SolveReport report;
  report.method = method;
  const int num_scenarios = inst.num_scenarios();
  report.certified_bound = EstimatorCertifiedBound(num_scenarios);

  MinimalThreshold threshold = MinimalC(inst, options.lp);
  report.timings.lp_us = MicrosSince(start);
  report.lower_bound = threshold.value;
  report.lp_solves = threshold.lp_solves;
  report.fractional = threshold.solution;
  if (method == Method::kRandom) {
    report.seed = options.seed ? *options.seed
                               : (uint64_t{std::random_device{}()} << 32) |
                                     std::random_device{}();
  }

  const auto rounding_start = Clock::now();
  if (sgn(threshold.value) == 0) {
    // LP_0 is feasible only with at least p items that cost 0 everywhere.
    std::vector<int> items;
    for (int i = 0; i < inst.num_items() && static_cast<int>(items.size()) < inst.p();
         ++i) {
      if (inst.ItemMaxCost(i) == 0) items.push_back(i);
    }
    report.selection = Evaluate(inst, std::move(items));
    report.rounding.path = "zero-threshold";
  } else {
    const std::vector<int>& items = threshold.solution.items;
    const int width = static_cast<int>(items.size());
    Matrix<Rational> scaled(num_scenarios, width);
    for (int s = 0; s < num_scenarios; ++s) {
      for (int j = 0; j < width; ++j) {
        scaled(s, j) = FromInt(inst.cost(s, items[j])) / threshold.value;
      }
    }
    const Matrix<double> scaled_double =
        MapMatrix<double>(scaled, [](const Rational& q) { return q.get_d(); });
    const std::vector<double> x = threshold.solution.values();
    report.scaled_row_masses = Multiply(scaled_double, std::span<const double>(x));

    switch (method) {
      case Method::kRandom:
        report.rounding = RandomizedRound(x, *report.seed);
        AttachRowValues(scaled_double, report.rounding);
        break;
      case Method::kDerand:
        report.rounding = DerandRound(scaled_double, x);
        break;
      case Method::kRam:
        report.rounding = RamRound(scaled, x);
        report.certified_bound = *std::max_element(
            report.rounding.row_bounds.begin(), report.rounding.row_bounds.end());
        break;
      case Method::kExact:
        break;
    }
    report.scaled_row_values = report.rounding.row_values;
    for (size_t r = 0; r < report.rounding.row_bounds.size(); ++r) {
      const double bound = report.rounding.row_bounds[r];
      if (report.scaled_row_values[r] > bound + 1e-9 * std::max(1.0, bound)) {
        throw std::logic_error("rounding guarantee violated in scenario " +
                               std::to_string(r));
      }
    }
    std::vector<int> chosen;
    for (int j : report.rounding.selected) chosen.push_back(items[j]);
    report.selection = Evaluate(inst, std::move(chosen));
  }
  report.timings.rounding_us = MicrosSince(rounding_start);
  report.approx_ratio = ApproxRatio(report.selection.max_cost, report.lower_bound);
  report.timings.total_us = MicrosSince(start);
  return report;
}

SolveReport SolveExact(const Instance& inst, int64_t budget,
                       const LpOptions& lp_options) {
  const int n = inst.num_items(), p = inst.p(), k = inst.num_scenarios();
  const int64_t subsets = Binomial(n, p, budget + 1);
  if (subsets > budget) {
    throw BudgetError("exact search needs C(" + std::to_string(n) + "," +
                      std::to_string(p) + ") subsets, over the budget of " +
                      std::to_string(budget));
  }
  const auto start = Clock::now();
  SolveReport report;
  report.method = Method::kExact;
  report.certified_bound = EstimatorCertifiedBound(k);

  // Depth-first over increasing index lists; a branch is cut once some
  // scenario already reaches the best total, since costs are nonnegative.
  std::vector<std::vector<Cost>> sums(p + 1, std::vector<Cost>(k, 0));
  std::vector<int> current(p), best_items;
  Cost best = std::numeric_limits<Cost>::max();
  int64_t visited = 0;
  auto dfs = [&](auto&& self, int depth, int next) -> void {
    if (depth == p) {
      ++visited;
      const Cost worst = *std::max_element(sums[p].begin(), sums[p].end());
      if (worst < best) {
        best = worst;
        best_items = current;
      }
      return;
    }
    for (int i = next; i <= n - (p - depth); ++i) {
      Cost worst = 0;
      for (int s = 0; s < k; ++s) {
        sums[depth + 1][s] = sums[depth][s] + inst.cost(s, i);
        worst = std::max(worst, sums[depth + 1][s]);
      }
      if (worst >= best) continue;
      current[depth] = i;
      self(self, depth + 1, i + 1);
    }
  };
  dfs(dfs, 0, 0);
  report.subsets_enumerated = visited;
  report.selection = Evaluate(inst, best_items);
  report.timings.rounding_us = MicrosSince(start);

  const auto lp_start = Clock::now();
  MinimalThreshold threshold = MinimalC(inst, lp_options);
  report.timings.lp_us = MicrosSince(lp_start);
  report.lower_bound = threshold.value;
  report.lp_solves = threshold.lp_solves;
  report.fractional = std::move(threshold.solution);
  report.approx_ratio = ApproxRatio(report.selection.max_cost, report.lower_bound);
  report.timings.total_us = MicrosSince(start);
  return report;
}

SolveReport Solve(const Instance& inst, Method method,
                  const SolveOptions& options, int64_t exact_budget) {
  if (method == Method::kExact) {
    return SolveExact(inst, exact_budget, options.lp);
  }
  return SolveApprox(inst, method, options);
}

GapReport VerifyGap(int k, std::optional<int> p, std::optional<int> n,
                    int64_t budget) {
  GapReport out;
  out.k = k;
  out.p = p.value_or(k);
  out.n = n.value_or(k * k + (out.p - k));
  const Instance inst = GenerateGap(k, out.p, out.n);
  out.num_scenarios = inst.num_scenarios();

  // x = 1/k on the first k^2 items, 1 on the next p - k, 0 elsewhere.
  const int core = k * k;
  std::vector<Rational> witness(out.n, Rational(0));
  for (int i = 0; i < core; ++i) witness[i] = Rational(1, k);
  for (int i = core; i < core + out.p - k; ++i) witness[i] = Rational(1);
  Rational mass(0);
  for (const Rational& v : witness) mass += v;
  out.witness_ok = mass == out.p;
  for (int s = 0; s < inst.num_scenarios() && out.witness_ok; ++s) {
    Rational total(0);
    for (int i = 0; i < out.n; ++i) total += FromInt(inst.cost(s, i)) * witness[i];
    out.witness_ok = total == 1;
  }

  LpOptions lp;
  lp.arithmetic = LpArithmetic::kExact;
  const SolveReport exact = SolveExact(inst, budget, lp);
  out.lp_value = exact.lower_bound;
  out.ip_value = exact.selection.max_cost;
  out.gap = ApproxRatio(out.ip_value, out.lp_value);
  const double log_k = std::log(static_cast<double>(out.num_scenarios));
  out.log_ratio = log_k > 1.0 ? log_k / std::log(log_k)
                              : std::numeric_limits<double>::quiet_NaN();
  out.holds = out.lp_value <= 1 && out.witness_ok && out.ip_value >= k &&
              out.gap >= k;
  return out;
}

}  // namespace minmax
