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

#include "minmax/report.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace minmax {
namespace {

struct Field {
  std::string key;
  std::string json;  // JSON-encoded value
  std::string text;  // plain value for the text form
};

template <typename T>
std::string JoinList(const std::vector<T>& values, const char* sep) {
  std::ostringstream out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << sep;
    out << values[i];
  }
  return out.str();
}

std::string JsonNumber(double value) {
  return std::isfinite(value) ? FormatNumber(value) : "null";
}

std::vector<Field> ReportFields(const Instance& inst, const SolveReport& report,
                                bool include_timings) {
  std::vector<Field> fields;
  const std::string name = nlohmann::json(inst.name()).dump();
  fields.push_back({"instance", name, inst.name()});
  fields.push_back({"method", "\"" + MethodName(report.method) + "\"",
                    MethodName(report.method)});
  const std::string lb = FormatNumber(ToDouble(report.lower_bound));
  fields.push_back({"lower_bound", lb, lb});
  const std::string lb_exact = ToString(report.lower_bound);
  fields.push_back({"lower_bound_exact", "\"" + lb_exact + "\"", lb_exact});
  fields.push_back({"selected", "[" + JoinList(report.selection.items, ", ") + "]",
                    JoinList(report.selection.items, " ")});
  fields.push_back(
      {"cost_per_scenario",
       "[" + JoinList(report.selection.cost_per_scenario, ", ") + "]",
       JoinList(report.selection.cost_per_scenario, " ")});
  const std::string max_cost = std::to_string(report.selection.max_cost);
  fields.push_back({"max_cost", max_cost, max_cost});
  fields.push_back({"approx_ratio", JsonNumber(report.approx_ratio),
                    FormatNumber(report.approx_ratio)});
  fields.push_back({"certified_bound", JsonNumber(report.certified_bound),
                    FormatNumber(report.certified_bound)});
  if (report.seed) {
    const std::string seed = std::to_string(*report.seed);
    fields.push_back({"seed", seed, seed});
  } else {
    fields.push_back({"seed", "null", "none"});
  }
  if (include_timings) {
    const auto& t = report.timings;
    fields.push_back({"timings_us",
                      "{\"lp\": " + std::to_string(t.lp_us) +
                          ", \"rounding\": " + std::to_string(t.rounding_us) +
                          ", \"total\": " + std::to_string(t.total_us) + "}",
                      "lp=" + std::to_string(t.lp_us) +
                          " rounding=" + std::to_string(t.rounding_us) +
                          " total=" + std::to_string(t.total_us)});
  }
  return fields;
}

std::vector<std::string> SplitCsvLine(const std::string& line, int line_no) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) {
    throw ValidationError("bench CSV line " + std::to_string(line_no) +
                          ": unterminated quote");
  }
  out.push_back(field);
  return out;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string ReportToJson(const Instance& inst, const SolveReport& report,
                         bool include_timings) {
  const auto fields = ReportFields(inst, report, include_timings);
  std::ostringstream out;
  out << "{\n";
  for (size_t i = 0; i < fields.size(); ++i) {
    out << "  \"" << fields[i].key << "\": " << fields[i].json
        << (i + 1 < fields.size() ? ",\n" : "\n");
  }
  out << "}\n";
  return out.str();
}

std::string ReportToText(const Instance& inst, const SolveReport& report,
                         bool include_timings) {
  std::ostringstream out;
  for (const Field& f : ReportFields(inst, report, include_timings)) {
    out << f.key << ": " << f.text << "\n";
  }
  return out.str();
}

BenchRow MakeBenchRow(const Instance& inst, const SolveReport& report,
                      int64_t wall_time_us) {
  BenchRow row;
  row.instance_id = inst.name();
  row.n = inst.num_items();
  row.num_scenarios = inst.num_scenarios();
  row.p = inst.p();
  row.method = MethodName(report.method);
  row.lower_bound = ToDouble(report.lower_bound);
  row.max_cost = report.selection.max_cost;
  row.ratio = report.approx_ratio;
  row.certified_bound = report.certified_bound;
  row.wall_time_us = wall_time_us;
  return row;
}

std::string BenchCsvHeader() {
  return "instance,n,K,p,method,lower_bound,max_cost,ratio,certified_bound,"
         "wall_time_us";
}

std::string BenchRowToCsv(const BenchRow& row) {
  std::ostringstream out;
  out << CsvField(row.instance_id) << ',' << row.n << ',' << row.num_scenarios
      << ',' << row.p << ',' << row.method << ',' << FormatNumber(row.lower_bound)
      << ',' << row.max_cost << ',' << FormatNumber(row.ratio) << ','
      << FormatNumber(row.certified_bound) << ',' << row.wall_time_us;
  return out.str();
}

std::vector<BenchRow> ParseBenchCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<BenchRow> rows;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header) {
      if (line != BenchCsvHeader()) {
        throw ValidationError("bench CSV line " + std::to_string(line_no) +
                              ": unexpected header");
      }
      header = true;
      continue;
    }
    const auto f = SplitCsvLine(line, line_no);
    if (f.size() != 10) {
      throw ValidationError("bench CSV line " + std::to_string(line_no) +
                            ": expected 10 fields, got " +
                            std::to_string(f.size()));
    }
    BenchRow row;
    try {
      row.instance_id = f[0];
      row.n = std::stoi(f[1]);
      row.num_scenarios = std::stoi(f[2]);
      row.p = std::stoi(f[3]);
      row.method = f[4];
      row.lower_bound = std::stod(f[5]);
      row.max_cost = std::stoll(f[6]);
      row.ratio = std::stod(f[7]);
      row.certified_bound = std::stod(f[8]);
      row.wall_time_us = std::stoll(f[9]);
    } catch (const std::exception&) {
      throw ValidationError("bench CSV line " + std::to_string(line_no) +
                            ": malformed number");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace minmax
