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

#include "minmax/cli.h"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "minmax/instance.h"
#include "minmax/lp.h"
#include "minmax/report.h"
#include "minmax/rounding.h"
#include "minmax/solver.h"

namespace minmax {
namespace {

namespace fs = std::filesystem;

void WriteOutput(const std::string& path, const std::string& content,
                 std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot write '" + path + "'");
  file << content;
}

struct GenGapArgs {
  int k = 0;
  std::optional<int> p, n;
  std::string output;
};

struct GenRandomArgs {
  int n = 10, scenarios = 5, p = 3;
  int64_t max_cost = 10;
  uint64_t seed = 1;
  std::string output;
};

struct SolveArgs {
  std::string input, method = "derand", output, format = "json";
  std::optional<uint64_t> seed;
  int64_t budget = kDefaultExactBudget;
  bool timings = false;
};

struct VerifyArgs {
  int k = 0;
  std::optional<int> p, n;
  int64_t budget = kDefaultExactBudget;
};

struct BenchArgs {
  std::string suite, methods = "derand,ram", output;
  int seeds = 1;
  int64_t budget = kDefaultExactBudget;
};

std::vector<std::string> SuiteFiles(const std::string& suite) {
  std::vector<std::string> files;
  const fs::path root(suite);
  if (fs::is_directory(root)) {
    for (const auto& entry : fs::directory_iterator(root)) {
      const auto ext = entry.path().extension().string();
      if (entry.is_regular_file() && (ext == ".json" || ext == ".csv")) {
        files.push_back(entry.path().string());
      }
    }
    std::sort(files.begin(), files.end());
    return files;
  }
  std::ifstream list(suite);
  if (!list) throw ValidationError("cannot open suite '" + suite + "'");
  std::string line;
  while (std::getline(list, line)) {
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty() || line[0] == '#') continue;
    fs::path path(line);
    if (path.is_relative()) path = root.parent_path() / path;
    files.push_back(path.string());
  }
  return files;
}

std::vector<Method> ParseMethodList(const std::string& list) {
  std::vector<Method> methods;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (!name.empty()) methods.push_back(ParseMethod(name));
  }
  if (methods.empty()) throw ValidationError("no methods given");
  return methods;
}

int RunGenGap(const GenGapArgs& args, std::ostream& out) {
  const int p = args.p.value_or(args.k);
  const int n = args.n.value_or(args.k * args.k + (p - args.k));
  WriteOutput(args.output, Serialize(GenerateGap(args.k, p, n)), out);
  return kExitOk;
}

int RunGenRandom(const GenRandomArgs& args, std::ostream& out) {
  WriteOutput(args.output,
              Serialize(GenerateRandom(args.n, args.scenarios, args.p,
                                       args.max_cost, args.seed)),
              out);
  return kExitOk;
}

int RunSolve(const SolveArgs& args, std::ostream& out) {
  const Instance inst = ReadInstanceFile(args.input);
  SolveOptions options;
  options.seed = args.seed;
  const SolveReport report =
      Solve(inst, ParseMethod(args.method), options, args.budget);
  const std::string text = args.format == "text"
                               ? ReportToText(inst, report, args.timings)
                               : ReportToJson(inst, report, args.timings);
  WriteOutput(args.output, text, out);
  return kExitOk;
}

int RunVerifyGap(const VerifyArgs& args, std::ostream& out) {
  const GapReport gap = VerifyGap(args.k, args.p, args.n, args.budget);
  out << "k: " << gap.k << "\n";
  out << "p: " << gap.p << "\n";
  out << "n: " << gap.n << "\n";
  out << "K: " << gap.num_scenarios << "\n";
  out << "lp_value: " << ToString(gap.lp_value) << "\n";
  out << "witness_feasible: " << (gap.witness_ok ? "yes" : "no") << "\n";
  out << "ip_value: " << gap.ip_value << "\n";
  out << "gap: " << FormatNumber(gap.gap) << "\n";
  out << "ln_K_over_ln_ln_K: "
      << (std::isnan(gap.log_ratio) ? "undefined" : FormatNumber(gap.log_ratio))
      << "\n";
  out << (gap.holds ? "gap >= k: holds\n" : "gap >= k: FAILS\n");
  return gap.holds ? kExitOk : kExitFailure;
}

int RunBench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  const auto files = SuiteFiles(args.suite);
  if (files.empty()) throw ValidationError("suite '" + args.suite + "' is empty");
  const auto methods = ParseMethodList(args.methods);
  if (args.seeds < 1) throw ValidationError("--seeds must be positive");
  std::ostringstream csv;
  csv << BenchCsvHeader() << "\n";
  for (const auto& file : files) {
    const Instance inst = ReadInstanceFile(file);
    for (Method method : methods) {
      const int runs = method == Method::kRandom ? args.seeds : 1;
      for (int run = 0; run < runs; ++run) {
        SolveOptions options;
        options.seed = static_cast<uint64_t>(run + 1);
        const auto start = std::chrono::steady_clock::now();
        try {
          const SolveReport report = Solve(inst, method, options, args.budget);
          const auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
          csv << BenchRowToCsv(MakeBenchRow(inst, report, us)) << "\n";
        } catch (const BudgetError& e) {
          err << "skipping " << file << " (" << MethodName(method)
              << "): " << e.what() << "\n";
        }
      }
    }
  }
  WriteOutput(args.output, csv.str(), out);
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Min-max selecting items: LP bounds, dependent rounding and "
               "its derandomizations",
               "minmax-select"};
  app.require_subcommand(1);

  GenGapArgs gap_args;
  GenRandomArgs random_args;
  SolveArgs solve_args;
  VerifyArgs verify_args;
  BenchArgs bench_args;

  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->require_subcommand(1);
  auto* gen_gap = gen->add_subcommand("gap", "Integrality-gap instance");
  gen_gap->add_option("--k", gap_args.k, "Gap parameter k")->required();
  gen_gap->add_option("--p", gap_args.p, "Selection size (default k)");
  gen_gap->add_option("--n", gap_args.n, "Item count (default k^2 + p - k)");
  gen_gap->add_option("--output,-o", gap_args.output, "Output path (default stdout)");
  auto* gen_random = gen->add_subcommand("random", "Uniform random costs");
  gen_random->add_option("--n", random_args.n, "Item count")->capture_default_str();
  gen_random->add_option("--scenarios", random_args.scenarios, "Scenario count K")
      ->capture_default_str();
  gen_random->add_option("--p", random_args.p, "Selection size")->capture_default_str();
  gen_random->add_option("--max-cost", random_args.max_cost, "Largest cost")
      ->capture_default_str();
  gen_random->add_option("--seed", random_args.seed, "Generator seed")
      ->capture_default_str();
  gen_random->add_option("--output,-o", random_args.output, "Output path");

  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("--input,-i", solve_args.input, "Instance file")->required();
  solve->add_option("--method,-m", solve_args.method, "random|derand|ram|exact")
      ->check(CLI::IsMember({"random", "derand", "ram", "exact"}))
      ->capture_default_str();
  solve->add_option("--seed", solve_args.seed, "Seed for --method random");
  solve->add_option("--output,-o", solve_args.output, "Report path");
  solve->add_option("--format", solve_args.format, "json|text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  solve->add_option("--budget", solve_args.budget, "Subset budget for exact")
      ->capture_default_str();
  solve->add_flag("--timings", solve_args.timings, "Include stage timings");

  auto* verify = app.add_subcommand("verify-gap", "Check the gap family at k");
  verify->add_option("--k", verify_args.k, "Gap parameter k")->required();
  verify->add_option("--p", verify_args.p, "Selection size (default k)");
  verify->add_option("--n", verify_args.n, "Item count");
  verify->add_option("--budget", verify_args.budget, "Subset budget")
      ->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Run methods over a suite, CSV out");
  bench->add_option("--suite", bench_args.suite,
                    "Directory of instances or a file listing them")
      ->required();
  bench->add_option("--methods", bench_args.methods, "Comma-separated methods")
      ->capture_default_str();
  bench->add_option("--seeds", bench_args.seeds, "Seeds per random run")
      ->capture_default_str();
  bench->add_option("--budget", bench_args.budget, "Subset budget for exact")
      ->capture_default_str();
  bench->add_option("--output,-o", bench_args.output, "CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    err << app.help("", CLI::AppFormatMode::All);
    return kExitInvalid;
  }

  try {
    if (*gen_gap) return RunGenGap(gap_args, out);
    if (*gen_random) return RunGenRandom(random_args, out);
    if (*solve) return RunSolve(solve_args, out);
    if (*verify) return RunVerifyGap(verify_args, out);
    if (*bench) return RunBench(bench_args, out, err);
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const RoundingError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitInvalid;
}

}  // namespace minmax
