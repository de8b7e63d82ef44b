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

#ifndef MINMAX_INSTANCE_H_
#define MINMAX_INSTANCE_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "minmax/matrix.h"

namespace minmax {

// Raised on any instance invariant violation or malformed input; the message
// names the offending field or index.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a requested computation exceeds a configured size budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Cost = int64_t;

// A Min-Max Selecting Items instance: choose exactly `p` of `n` items so that
// the largest total cost over the K scenarios is minimal. Immutable once
// validated.
class Instance {
 public:
  // Validates all invariants; throws ValidationError otherwise.
  Instance(int n, int p, Matrix<Cost> costs, std::string name = "");

  int num_items() const { return n_; }
  int num_scenarios() const { return costs_.rows(); }
  int p() const { return p_; }
  const std::string& name() const { return name_; }
  const Matrix<Cost>& costs() const { return costs_; }
  Cost cost(int scenario, int item) const { return costs_(scenario, item); }

  // Largest cost of `item` over all scenarios.
  Cost ItemMaxCost(int item) const;

  bool operator==(const Instance&) const = default;

 private:
  int n_;
  int p_;
  Matrix<Cost> costs_;
  std::string name_;
};

// Undecoded instance fields, as read from a file or built by hand.
struct RawInstance {
  std::optional<int64_t> n;
  std::optional<int64_t> p;
  std::optional<int64_t> num_scenarios;
  std::optional<std::string> name;
  // Non-integral entries are kept as doubles so they can be reported rather
  // than silently truncated.
  std::vector<std::vector<std::variant<int64_t, double>>> costs;
  bool costs_present = false;
};

Instance Validate(const RawInstance& raw);

// A chosen item set and its cost in every scenario.
struct Selection {
  std::vector<int> items;  // ascending, 0-based
  std::vector<Cost> cost_per_scenario;
  Cost max_cost = 0;
};

// Evaluates `items` on `inst`; throws ValidationError if the set does not
// have exactly p distinct in-range items.
Selection Evaluate(const Instance& inst, std::vector<int> items);

inline constexpr int64_t kDefaultGapScenarioCap = 1'000'000;

// The integrality-gap family: one scenario per k-subset T of the first k*k
// items (lexicographic order), cost 1 on T, 0 on the remaining items among
// the first k*k + (p - k), and 2 on every item beyond that.
Instance GenerateGap(int k, int p, int n,
                     int64_t scenario_cap = kDefaultGapScenarioCap);

// Costs uniform on {0, ..., max_cost}, deterministic in `seed`.
Instance GenerateRandom(int n, int num_scenarios, int p, Cost max_cost,
                        uint64_t seed);

// Canonical JSON encoding; keys in the order n, p, K, name, costs.
std::string Serialize(const Instance& inst);

// Accepts the canonical JSON form or the CSV form (a line "n,p,K" followed by
// K rows of n costs; an optional literal "n,p,K" title line is skipped).
Instance Parse(const std::string& text);

// Unnamed instances are named after the file stem.
Instance ReadInstanceFile(const std::string& path);

// Saturating binomial coefficient.
int64_t Binomial(int64_t n, int64_t k, int64_t cap = INT64_MAX);

}  // namespace minmax

#endif  // MINMAX_INSTANCE_H_
