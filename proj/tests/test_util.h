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

#ifndef MINMAX_TESTS_TEST_UTIL_H_
#define MINMAX_TESTS_TEST_UTIL_H_

#include <string>
#include <vector>

#include "minmax/instance.h"
#include "minmax/matrix.h"

namespace minmax::testing {

// what() of the exception thrown by `fn`, or "" if nothing was thrown.
template <typename Fn>
std::string ErrorOf(Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

inline bool Contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

inline Instance MakeInstance(int p, const std::vector<std::vector<Cost>>& rows,
                             std::string name = "") {
  Matrix<Cost> costs(static_cast<int>(rows.size()),
                     static_cast<int>(rows.at(0).size()));
  for (size_t s = 0; s < rows.size(); ++s) {
    for (size_t i = 0; i < rows[s].size(); ++i) costs(s, i) = rows[s][i];
  }
  return Instance(costs.cols(), p, std::move(costs), std::move(name));
}

inline Matrix<double> MakeMatrix(const std::vector<std::vector<double>>& rows) {
  Matrix<double> m(static_cast<int>(rows.size()),
                   rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

}  // namespace minmax::testing

#endif  // MINMAX_TESTS_TEST_UTIL_H_
