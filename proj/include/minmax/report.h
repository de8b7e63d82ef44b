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

#ifndef MINMAX_REPORT_H_
#define MINMAX_REPORT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "minmax/instance.h"
#include "minmax/solver.h"

namespace minmax {

// 12 significant digits, '.' separator, round-half-even on the exact binary
// value; "inf"/"nan" for non-finite values.
std::string FormatNumber(double value);

// Flat report document; keys in fixed order. Timings are included only on
// request so that deterministic runs stay byte-identical.
std::string ReportToJson(const Instance& inst, const SolveReport& report,
                         bool include_timings = false);
// Same keys, one "key: value" per line.
std::string ReportToText(const Instance& inst, const SolveReport& report,
                         bool include_timings = false);

struct BenchRow {
  std::string instance_id;
  int n = 0;
  int num_scenarios = 0;
  int p = 0;
  std::string method;
  double lower_bound = 0;
  Cost max_cost = 0;
  double ratio = 0;
  double certified_bound = 0;
  int64_t wall_time_us = 0;

  bool operator==(const BenchRow&) const = default;
};

BenchRow MakeBenchRow(const Instance& inst, const SolveReport& report,
                      int64_t wall_time_us);

std::string BenchCsvHeader();
std::string BenchRowToCsv(const BenchRow& row);
// Parses a header line followed by rows; throws ValidationError with the
// line number on malformed input.
std::vector<BenchRow> ParseBenchCsv(const std::string& text);

}  // namespace minmax

#endif  // MINMAX_REPORT_H_
