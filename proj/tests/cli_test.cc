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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "minmax/cli.h"
#include "minmax/instance.h"
#include "minmax/report.h"
#include "test_util.h"

namespace minmax {
namespace {

namespace fs = std::filesystem;
using testing::Contains;

struct Run {
  int code;
  std::string out, err;
};

Run Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "minmax-select");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path ScratchDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("minmax_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void WriteFile(const fs::path& path, const std::string& content) {
  std::ofstream(path) << content;
}

const std::string kGap2 = std::string(MINMAX_TEST_DATA_DIR) + "/gap_k2.json";

TEST_CASE("gen writes canonical instances") {
  const Run gap = Invoke({"gen", "gap", "--k", "2"});
  CHECK(gap.code == kExitOk);
  CHECK(gap.out == Serialize(GenerateGap(2, 2, 4)));
  const Run random = Invoke({"gen", "random", "--n", "6", "--scenarios", "3", "--p",
                             "2", "--max-cost", "7", "--seed", "5"});
  CHECK(random.code == kExitOk);
  CHECK(random.out == Serialize(GenerateRandom(6, 3, 2, 7, 5)));
  const fs::path dir = ScratchDir("gen");
  CHECK(Invoke({"gen", "gap", "--k", "3", "-o", (dir / "g3.json").string()}).code == 0);
  CHECK(ReadInstanceFile((dir / "g3.json").string()).num_scenarios() == 84);
}

TEST_CASE("solve reproduces the golden report") {
  const Run run = Invoke({"solve", "--input", kGap2, "--method", "derand"});
  CHECK(run.code == kExitOk);
  std::ifstream golden(std::string(MINMAX_TEST_DATA_DIR) + "/gap_k2_derand.json");
  std::ostringstream expected;
  expected << golden.rdbuf();
  CHECK(run.out == expected.str());
  // Byte-identical on repeat, for every deterministic method.
  for (const char* method : {"derand", "ram", "exact"}) {
    const Run a = Invoke({"solve", "-i", kGap2, "-m", method});
    const Run b = Invoke({"solve", "-i", kGap2, "-m", method});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
  }
  const Run seeded = Invoke({"solve", "-i", kGap2, "-m", "random", "--seed", "9"});
  CHECK(nlohmann::json::parse(seeded.out)["seed"] == 9);
  CHECK(seeded.out == Invoke({"solve", "-i", kGap2, "-m", "random", "--seed", "9"}).out);
}

TEST_CASE("solve text format and timings") {
  const Run text = Invoke({"solve", "-i", kGap2, "--format", "text"});
  CHECK(text.code == kExitOk);
  CHECK(Contains(text.out, "max_cost: 2\n"));
  const fs::path dir = ScratchDir("text");
  WriteFile(dir / "tiny.csv", "n,p,K\n3,1,2\n1,2,3\n3,2,1\n");
  const Run csv = Invoke({"solve", "-i", (dir / "tiny.csv").string(), "--format", "text"});
  CHECK(csv.code == kExitOk);
  CHECK(Contains(csv.out, "instance: tiny\n"));
  CHECK(Contains(csv.out, "max_cost: 2\n"));
  const Run timed = Invoke({"solve", "-i", kGap2, "--timings"});
  CHECK(nlohmann::json::parse(timed.out).contains("timings_us"));
}

TEST_CASE("exit codes") {
  const fs::path dir = ScratchDir("exit");
  // Usage errors.
  CHECK(Invoke({}).code == kExitInvalid);
  const Run missing = Invoke({"solve"});
  CHECK(missing.code == kExitInvalid);
  CHECK(Contains(missing.err, "--input"));
  CHECK(Invoke({"solve", "-i", kGap2, "-m", "greedy"}).code == kExitInvalid);
  CHECK(Invoke({"help-me"}).code == kExitInvalid);
  // Validation errors.
  WriteFile(dir / "bad.json", R"({"n": 2, "p": 3, "K": 1, "costs": [[1, 2]]})");
  const Run bad = Invoke({"solve", "-i", (dir / "bad.json").string()});
  CHECK(bad.code == kExitInvalid);
  CHECK(Contains(bad.err, "p out of range"));
  WriteFile(dir / "neg.json", R"({"n": 2, "p": 1, "K": 1, "costs": [[1, -2]]})");
  CHECK(Contains(Invoke({"solve", "-i", (dir / "neg.json").string()}).err,
                 "negative cost at (0,1)"));
  CHECK(Invoke({"solve", "-i", (dir / "absent.json").string()}).code == kExitInvalid);
  // Budget.
  CHECK(Invoke({"gen", "random", "--n", "30", "--p", "15", "-o",
                (dir / "big.json").string()})
            .code == 0);
  const Run budget = Invoke({"solve", "-i", (dir / "big.json").string(), "-m", "exact",
                             "--budget", "1000"});
  CHECK(budget.code == kExitBudget);
  CHECK(Contains(budget.err, "budget"));
  // Help is not an error.
  const Run help = Invoke({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(Contains(help.out, "verify-gap"));
}

TEST_CASE("verify-gap") {
  const Run run = Invoke({"verify-gap", "--k", "2"});
  CHECK(run.code == kExitOk);
  CHECK(Contains(run.out, "K: 6\n"));
  CHECK(Contains(run.out, "lp_value: 1\n"));
  CHECK(Contains(run.out, "witness_feasible: yes\n"));
  CHECK(Contains(run.out, "ip_value: 2\n"));
  CHECK(Contains(run.out, "gap >= k: holds\n"));
  CHECK(Contains(Invoke({"verify-gap", "--k", "1"}).out, "ln_K_over_ln_ln_K: undefined"));
  CHECK(Invoke({"verify-gap", "--k", "0"}).code == kExitInvalid);
}

TEST_CASE("bench over a directory") {
  const fs::path dir = ScratchDir("bench");
  const fs::path suite = dir / "suite";
  fs::create_directories(suite);
  WriteFile(suite / "a.json", Serialize(GenerateGap(2, 2, 4)));
  WriteFile(suite / "b.json", Serialize(GenerateRandom(8, 4, 3, 9, 2)));
  WriteFile(suite / "notes.txt", "ignored");
  const Run run = Invoke({"bench", "--suite", suite.string(), "--methods",
                          "derand,ram,random,exact", "--seeds", "3"});
  CHECK(run.code == kExitOk);
  const auto rows = ParseBenchCsv(run.out);
  // Per instance: derand, ram, exact once each, random three times.
  REQUIRE(rows.size() == 12);
  CHECK(rows[0].instance_id == "gap-k2-p2-n4");
  CHECK(rows[0].method == "derand");
  for (const BenchRow& row : rows) {
    CHECK(row.max_cost >= row.lower_bound);
    if (row.method == "derand" || row.method == "ram") {
      CHECK(row.ratio <= row.certified_bound + 1e-9);
    }
  }
  // A list file with relative paths, written to a CSV file.
  WriteFile(dir / "list.txt", "# suite\nsuite/a.json\n");
  const fs::path csv = dir / "out.csv";
  CHECK(Invoke({"bench", "--suite", (dir / "list.txt").string(), "-o", csv.string()})
            .code == kExitOk);
  std::ifstream in(csv);
  std::ostringstream text;
  text << in.rdbuf();
  CHECK(ParseBenchCsv(text.str()).size() == 2);
  // Empty suite and budget skips.
  fs::create_directories(dir / "empty");
  CHECK(Invoke({"bench", "--suite", (dir / "empty").string()}).code == kExitInvalid);
  const Run skipped = Invoke({"bench", "--suite", suite.string(), "--methods", "exact",
                              "--budget", "1"});
  CHECK(skipped.code == kExitOk);
  CHECK(Contains(skipped.err, "skipping"));
}

}  // namespace
}  // namespace minmax
