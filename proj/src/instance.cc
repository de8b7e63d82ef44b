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

#include "minmax/instance.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace minmax {
namespace {

std::string At(int64_t scenario, int64_t item) {
  return "(" + std::to_string(scenario) + "," + std::to_string(item) + ")";
}

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> SplitCommas(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(Trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

int64_t ParseCsvInteger(const std::string& token, int line, int column) {
  const std::string where =
      "line " + std::to_string(line) + ", field " + std::to_string(column);
  if (token.empty()) throw ValidationError(where + ": empty field");
  size_t used = 0;
  int64_t value = 0;
  try {
    value = std::stoll(token, &used);
  } catch (const std::exception&) {
    throw ValidationError(where + ": malformed integer '" + token + "'");
  }
  if (used != token.size()) {
    throw ValidationError(where + ": malformed integer '" + token + "'");
  }
  return value;
}

Instance ParseCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  RawInstance raw;
  bool header_seen = false;
  raw.costs_present = true;
  while (std::getline(in, line)) {
    ++line_no;
    line = Trim(line);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line == "n,p,K") continue;
      const auto fields = SplitCommas(line);
      if (fields.size() != 3) {
        throw ValidationError("line " + std::to_string(line_no) +
                              ": header must be 'n,p,K'");
      }
      raw.n = ParseCsvInteger(fields[0], line_no, 1);
      raw.p = ParseCsvInteger(fields[1], line_no, 2);
      raw.num_scenarios = ParseCsvInteger(fields[2], line_no, 3);
      header_seen = true;
      continue;
    }
    std::vector<std::variant<int64_t, double>> row;
    const auto fields = SplitCommas(line);
    for (size_t c = 0; c < fields.size(); ++c) {
      row.emplace_back(ParseCsvInteger(fields[c], line_no, c + 1));
    }
    raw.costs.push_back(std::move(row));
  }
  if (!header_seen) throw ValidationError("line 1: missing 'n,p,K' header");
  return Validate(raw);
}

std::optional<int64_t> JsonInteger(const nlohmann::json& doc,
                                   const std::string& key) {
  if (!doc.contains(key)) return std::nullopt;
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) {
    throw ValidationError("field '" + key + "' must be an integer");
  }
  return v.get<int64_t>();
}

Instance ParseJson(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("instance must be a JSON object");
  RawInstance raw;
  raw.n = JsonInteger(doc, "n");
  raw.p = JsonInteger(doc, "p");
  raw.num_scenarios = JsonInteger(doc, "K");
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) {
      throw ValidationError("field 'name' must be a string");
    }
    raw.name = doc["name"].get<std::string>();
  }
  if (doc.contains("costs")) {
    raw.costs_present = true;
    const auto& rows = doc["costs"];
    if (!rows.is_array()) throw ValidationError("field 'costs' must be an array");
    for (size_t s = 0; s < rows.size(); ++s) {
      if (!rows[s].is_array()) {
        throw ValidationError("costs[" + std::to_string(s) +
                              "] must be an array");
      }
      std::vector<std::variant<int64_t, double>> row;
      for (size_t i = 0; i < rows[s].size(); ++i) {
        const auto& v = rows[s][i];
        if (v.is_number_unsigned() &&
            v.get<uint64_t>() > static_cast<uint64_t>(INT64_MAX)) {
          throw ValidationError("cost too large at " + At(s, i));
        }
        if (v.is_number_integer()) {
          row.emplace_back(v.get<int64_t>());
        } else if (v.is_number_float()) {
          row.emplace_back(v.get<double>());
        } else {
          throw ValidationError("non-numeric cost at " + At(s, i));
        }
      }
      raw.costs.push_back(std::move(row));
    }
  }
  return Validate(raw);
}

}  // namespace

Instance::Instance(int n, int p, Matrix<Cost> costs, std::string name)
    : n_(n), p_(p), costs_(std::move(costs)), name_(std::move(name)) {
  if (n_ <= 0) throw ValidationError("n must be positive");
  if (costs_.rows() <= 0) throw ValidationError("K must be positive");
  if (p_ < 1 || p_ > n_) {
    throw ValidationError("p out of range: p=" + std::to_string(p_) +
                          ", n=" + std::to_string(n_));
  }
  if (costs_.cols() != n_) {
    throw ValidationError("dimension mismatch: costs has " +
                          std::to_string(costs_.cols()) + " columns, n=" +
                          std::to_string(n_));
  }
  for (int s = 0; s < costs_.rows(); ++s) {
    for (int i = 0; i < n_; ++i) {
      if (costs_(s, i) < 0) throw ValidationError("negative cost at " + At(s, i));
    }
  }
}

Cost Instance::ItemMaxCost(int item) const {
  Cost best = 0;
  for (int s = 0; s < num_scenarios(); ++s) best = std::max(best, costs_(s, item));
  return best;
}

Instance Validate(const RawInstance& raw) {
  if (!raw.n) throw ValidationError("missing field 'n'");
  if (!raw.p) throw ValidationError("missing field 'p'");
  if (!raw.num_scenarios) throw ValidationError("missing field 'K'");
  if (!raw.costs_present) throw ValidationError("missing field 'costs'");
  const int64_t n = *raw.n, p = *raw.p, k = *raw.num_scenarios;
  if (n <= 0) throw ValidationError("n must be positive");
  if (k <= 0) throw ValidationError("K must be positive");
  if (n > INT32_MAX || k > INT32_MAX) {
    throw ValidationError("n or K too large");
  }
  if (p < 1 || p > n) {
    throw ValidationError("p out of range: p=" + std::to_string(p) +
                          ", n=" + std::to_string(n));
  }
  if (static_cast<int64_t>(raw.costs.size()) != k) {
    throw ValidationError("dimension mismatch: costs has " +
                          std::to_string(raw.costs.size()) + " rows, K=" +
                          std::to_string(k));
  }
  Matrix<Cost> costs(static_cast<int>(k), static_cast<int>(n));
  for (int64_t s = 0; s < k; ++s) {
    const auto& row = raw.costs[s];
    if (static_cast<int64_t>(row.size()) != n) {
      throw ValidationError("dimension mismatch: costs[" + std::to_string(s) +
                            "] has " + std::to_string(row.size()) +
                            " entries, n=" + std::to_string(n));
    }
    for (int64_t i = 0; i < n; ++i) {
      int64_t value = 0;
      if (const auto* integral = std::get_if<int64_t>(&row[i])) {
        value = *integral;
      } else {
        const double d = std::get<double>(row[i]);
        if (d < 0) throw ValidationError("negative cost at " + At(s, i));
        if (!std::isfinite(d) || d != std::floor(d) || d > 9.0e15) {
          throw ValidationError("non-integral cost at " + At(s, i));
        }
        value = static_cast<int64_t>(d);
      }
      if (value < 0) throw ValidationError("negative cost at " + At(s, i));
      costs(s, i) = value;
    }
  }
  return Instance(static_cast<int>(n), static_cast<int>(p), std::move(costs),
                  raw.name.value_or(""));
}

Selection Evaluate(const Instance& inst, std::vector<int> items) {
  std::sort(items.begin(), items.end());
  if (std::adjacent_find(items.begin(), items.end()) != items.end()) {
    throw ValidationError("selection contains a repeated item");
  }
  if (static_cast<int>(items.size()) != inst.p()) {
    throw ValidationError("selection has " + std::to_string(items.size()) +
                          " items, p=" + std::to_string(inst.p()));
  }
  for (int i : items) {
    if (i < 0 || i >= inst.num_items()) {
      throw ValidationError("selected item " + std::to_string(i) +
                            " out of range");
    }
  }
  Selection sel;
  sel.items = std::move(items);
  sel.cost_per_scenario.assign(inst.num_scenarios(), 0);
  for (int s = 0; s < inst.num_scenarios(); ++s) {
    Cost total = 0;
    for (int i : sel.items) total += inst.cost(s, i);
    sel.cost_per_scenario[s] = total;
    sel.max_cost = std::max(sel.max_cost, total);
  }
  return sel;
}

int64_t Binomial(int64_t n, int64_t k, int64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // result * (n - j) / (j + 1) stays integral at every step.
  __int128 result = 1;
  for (int64_t j = 0; j < k; ++j) {
    result = result * (n - j) / (j + 1);
    if (result > cap) return cap;
  }
  return static_cast<int64_t>(result);
}

Instance GenerateGap(int k, int p, int n, int64_t scenario_cap) {
  if (k < 1) throw ValidationError("gap: k must be positive");
  if (p < k) throw ValidationError("gap: p must be at least k");
  const int64_t core = static_cast<int64_t>(k) * k;
  const int64_t cheap = core + (p - k);
  if (n < cheap) {
    throw ValidationError("gap: n must be at least k^2 + (p - k) = " +
                          std::to_string(cheap));
  }
  const int64_t scenarios = Binomial(core, k, scenario_cap + 1);
  if (scenarios > scenario_cap) {
    throw ValidationError("gap: C(k^2, k) exceeds the scenario cap of " +
                          std::to_string(scenario_cap));
  }
  Matrix<Cost> costs(static_cast<int>(scenarios), n, 0);
  std::vector<int> subset(k);
  for (int j = 0; j < k; ++j) subset[j] = j;
  for (int s = 0; s < scenarios; ++s) {
    for (int i = static_cast<int>(cheap); i < n; ++i) costs(s, i) = 2;
    for (int i : subset) costs(s, i) = 1;
    // Next k-subset of {0, ..., core-1} in lexicographic order.
    int pos = k - 1;
    while (pos >= 0 && subset[pos] == core - k + pos) --pos;
    if (pos < 0) break;
    ++subset[pos];
    for (int j = pos + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  return Instance(n, p, std::move(costs),
                  "gap-k" + std::to_string(k) + "-p" + std::to_string(p) +
                      "-n" + std::to_string(n));
}

Instance GenerateRandom(int n, int num_scenarios, int p, Cost max_cost,
                        uint64_t seed) {
  if (max_cost < 1) throw ValidationError("max_cost must be at least 1");
  if (n <= 0) throw ValidationError("n must be positive");
  if (num_scenarios <= 0) throw ValidationError("K must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Cost> dist(0, max_cost);
  Matrix<Cost> costs(num_scenarios, n);
  for (int s = 0; s < num_scenarios; ++s) {
    for (int i = 0; i < n; ++i) costs(s, i) = dist(rng);
  }
  return Instance(n, p, std::move(costs),
                  "random-n" + std::to_string(n) + "-K" +
                      std::to_string(num_scenarios) + "-p" +
                      std::to_string(p) + "-s" + std::to_string(seed));
}

std::string Serialize(const Instance& inst) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"n\": " << inst.num_items() << ",\n";
  out << "  \"p\": " << inst.p() << ",\n";
  out << "  \"K\": " << inst.num_scenarios() << ",\n";
  if (!inst.name().empty()) {
    out << "  \"name\": " << nlohmann::json(inst.name()).dump() << ",\n";
  }
  out << "  \"costs\": [\n";
  for (int s = 0; s < inst.num_scenarios(); ++s) {
    out << "    [";
    for (int i = 0; i < inst.num_items(); ++i) {
      if (i > 0) out << ", ";
      out << inst.cost(s, i);
    }
    out << (s + 1 < inst.num_scenarios() ? "],\n" : "]\n");
  }
  out << "  ]\n}\n";
  return out.str();
}

Instance Parse(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return ParseJson(text);
  return ParseCsv(text);
}

Instance ReadInstanceFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  Instance inst = Parse(buf.str());
  if (!inst.name().empty()) return inst;
  const int n = inst.num_items(), p = inst.p();
  Matrix<Cost> costs = inst.costs();
  return Instance(n, p, std::move(costs),
                  std::filesystem::path(path).stem().string());
}

}  // namespace minmax
