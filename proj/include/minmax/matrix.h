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

#ifndef MINMAX_MATRIX_H_
#define MINMAX_MATRIX_H_

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace minmax {

// Dense row-major matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(int r, int c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return data_[static_cast<size_t>(r) * cols_ + c];
  }
  const T& operator()(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return data_[static_cast<size_t>(r) * cols_ + c];
  }

  std::span<T> row(int r) {
    return {data_.data() + static_cast<size_t>(r) * cols_,
            static_cast<size_t>(cols_)};
  }
  std::span<const T> row(int r) const {
    return {data_.data() + static_cast<size_t>(r) * cols_,
            static_cast<size_t>(cols_)};
  }

  bool operator==(const Matrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

// y = A x.
template <typename T, typename U>
std::vector<T> Multiply(const Matrix<T>& a, std::span<const U> x) {
  assert(static_cast<int>(x.size()) == a.cols());
  std::vector<T> out(a.rows(), T(0));
  for (int r = 0; r < a.rows(); ++r) {
    T sum(0);
    for (int c = 0; c < a.cols(); ++c) sum += a(r, c) * x[c];
    out[r] = sum;
  }
  return out;
}

template <typename To, typename From, typename Convert>
Matrix<To> MapMatrix(const Matrix<From>& a, Convert convert) {
  Matrix<To> out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) out(r, c) = convert(a(r, c));
  }
  return out;
}

}  // namespace minmax

#endif  // MINMAX_MATRIX_H_
