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

#ifndef MINMAX_CLI_H_
#define MINMAX_CLI_H_

#include <iosfwd>

namespace minmax {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // internal error or failed check
inline constexpr int kExitInvalid = 2;  // usage, validation or infeasibility
inline constexpr int kExitBudget = 3;   // size budget exceeded

// Entry point of the `minmax-select` tool: subcommands gen, solve,
// verify-gap and bench.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace minmax

#endif  // MINMAX_CLI_H_
