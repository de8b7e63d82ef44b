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

#include "minmax/simplex.h"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <type_traits>

namespace minmax {
namespace {

template <typename Scalar>
constexpr bool kExact = std::is_same_v<Scalar, Rational>;

template <typename Scalar>
int Sign(const Scalar& v, double tol) {
  if constexpr (kExact<Scalar>) {
    return sgn(v);
  } else {
    return v > tol ? 1 : (v < -tol ? -1 : 0);
  }
}

template <typename Scalar>
class Tableau {
 public:
  Tableau(const LinearProgram<Scalar>& lp, const SimplexOptions& options)
      : tol_(options.tolerance), num_structural_(lp.num_variables) {
    const int m = static_cast<int>(lp.rows.size());
    // Normalize so every right-hand side is nonnegative.
    std::vector<RowSense> senses(m);
    std::vector<bool> flipped(m, false);
    int num_slack = 0, num_artificial = 0;
    for (int i = 0; i < m; ++i) {
      senses[i] = lp.rows[i].sense;
      if (Sign(lp.rows[i].rhs, 0.0) < 0) {
        flipped[i] = true;
        if (senses[i] == RowSense::kLessEqual) {
          senses[i] = RowSense::kGreaterEqual;
        } else if (senses[i] == RowSense::kGreaterEqual) {
          senses[i] = RowSense::kLessEqual;
        }
      }
      if (senses[i] != RowSense::kEqual) ++num_slack;
      if (senses[i] != RowSense::kLessEqual) ++num_artificial;
    }
    first_artificial_ = num_structural_ + num_slack;
    num_columns_ = first_artificial_ + num_artificial;
    width_ = num_columns_ + 1;
    rows_ = m;
    cells_.assign(static_cast<size_t>(rows_) * width_, Scalar(0));
    basis_.assign(rows_, -1);
    int next_slack = num_structural_, next_artificial = first_artificial_;
    for (int i = 0; i < m; ++i) {
      const auto& row = lp.rows[i];
      if (static_cast<int>(row.coefficients.size()) != num_structural_) {
        throw std::invalid_argument("LP row has wrong number of coefficients");
      }
      for (int j = 0; j < num_structural_; ++j) {
        at(i, j) = flipped[i] ? Scalar(-row.coefficients[j]) : row.coefficients[j];
      }
      at(i, num_columns_) = flipped[i] ? Scalar(-row.rhs) : row.rhs;
      switch (senses[i]) {
        case RowSense::kLessEqual:
          at(i, next_slack) = Scalar(1);
          basis_[i] = next_slack++;
          break;
        case RowSense::kGreaterEqual:
          at(i, next_slack++) = Scalar(-1);
          at(i, next_artificial) = Scalar(1);
          basis_[i] = next_artificial++;
          break;
        case RowSense::kEqual:
          at(i, next_artificial) = Scalar(1);
          basis_[i] = next_artificial++;
          break;
      }
    }
    cost_row_.assign(width_, Scalar(0));
    iteration_cap_ =
        static_cast<int64_t>(options.iteration_factor) * (rows_ + num_columns_);
  }

  LpResult<Scalar> Run(const std::vector<Scalar>& objective) {
    LpResult<Scalar> result;
    // Phase 1: minimize the sum of artificials.
    std::vector<Scalar> phase1(num_columns_, Scalar(0));
    for (int j = first_artificial_; j < num_columns_; ++j) phase1[j] = Scalar(1);
    PriceOut(phase1);
    LpStatus status = Iterate(/*allow_artificial=*/true, &result.iterations);
    if (status == LpStatus::kIterationLimit) {
      result.status = status;
      return result;
    }
    result.infeasibility = Scalar(-cost_row_[num_columns_]);
    if (Sign(result.infeasibility, tol_) > 0) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    DriveOutArtificials();

    std::vector<Scalar> phase2(num_columns_, Scalar(0));
    for (int j = 0; j < num_structural_; ++j) phase2[j] = objective[j];
    PriceOut(phase2);
    status = Iterate(/*allow_artificial=*/false, &result.iterations);
    result.status = status;
    if (status != LpStatus::kOptimal) return result;
    result.objective_value = Scalar(-cost_row_[num_columns_]);
    result.x.assign(num_structural_, Scalar(0));
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] >= 0 && basis_[i] < num_structural_) {
        result.x[basis_[i]] = at(i, num_columns_);
      }
    }
    return result;
  }

 private:
  Scalar& at(int i, int j) { return cells_[static_cast<size_t>(i) * width_ + j]; }

  // Reduced costs d = c - c_B B^{-1} A for the current basis.
  void PriceOut(const std::vector<Scalar>& costs) {
    for (int j = 0; j < num_columns_; ++j) cost_row_[j] = costs[j];
    cost_row_[num_columns_] = Scalar(0);
    for (int i = 0; i < rows_; ++i) {
      const Scalar& cb = costs[basis_[i]];
      if (Sign(cb, 0.0) == 0) continue;
      for (int j = 0; j < width_; ++j) {
        if (Sign(at(i, j), 0.0) != 0) cost_row_[j] -= cb * at(i, j);
      }
    }
  }

  LpStatus Iterate(bool allow_artificial, int64_t* iterations) {
    const int limit = allow_artificial ? num_columns_ : first_artificial_;
    while (true) {
      int entering = -1;
      for (int j = 0; j < limit; ++j) {
        if (Sign(cost_row_[j], tol_) < 0) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return LpStatus::kOptimal;
      if (*iterations >= iteration_cap_) return LpStatus::kIterationLimit;
      int leaving = -1;
      Scalar best_ratio(0);
      for (int i = 0; i < rows_; ++i) {
        const Scalar& a = at(i, entering);
        if (Sign(a, tol_) <= 0) continue;
        Scalar ratio = at(i, num_columns_) / a;
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving < 0) return LpStatus::kUnbounded;
      Pivot(leaving, entering);
      ++*iterations;
    }
  }

  void Pivot(int r, int c) {
    const Scalar inv = Scalar(1) / at(r, c);
    std::vector<int> support;
    for (int j = 0; j < width_; ++j) {
      if (Sign(at(r, j), 0.0) == 0) continue;
      at(r, j) *= inv;
      support.push_back(j);
    }
    at(r, c) = Scalar(1);
    Scalar scratch;
    auto eliminate = [&](Scalar* row) {
      if (Sign(row[c], 0.0) == 0) return;
      const Scalar factor = row[c];
      const Scalar* pivot_row = &cells_[static_cast<size_t>(r) * width_];
      for (int j : support) {
        scratch = factor * pivot_row[j];
        row[j] -= scratch;
        if constexpr (!kExact<Scalar>) {
          if (std::fabs(row[j]) < 1e-13) row[j] = 0.0;
        }
      }
      row[c] = Scalar(0);
    };
    for (int i = 0; i < rows_; ++i) {
      if (i != r) eliminate(&cells_[static_cast<size_t>(i) * width_]);
    }
    eliminate(cost_row_.data());
    basis_[r] = c;
  }

  void DriveOutArtificials() {
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      int column = -1;
      for (int j = 0; j < first_artificial_; ++j) {
        if (Sign(at(i, j), tol_) != 0) {
          column = j;
          break;
        }
      }
      if (column >= 0) {
        Pivot(i, column);
      } else {
        // Redundant row: zero it so it can never constrain phase 2.
        for (int j = 0; j < width_; ++j) at(i, j) = Scalar(0);
        basis_[i] = -1;
      }
    }
    // Redundant rows keep a placeholder basic index that no pivot selects.
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < 0) basis_[i] = num_columns_ - 1;
    }
  }

  double tol_;
  int num_structural_;
  int first_artificial_ = 0;
  int num_columns_ = 0;
  int width_ = 0;
  int rows_ = 0;
  std::vector<Scalar> cells_;
  std::vector<Scalar> cost_row_;
  std::vector<int> basis_;
  int64_t iteration_cap_ = 0;
};

}  // namespace

template <typename Scalar>
LpResult<Scalar> SolveDense(const LinearProgram<Scalar>& lp,
                            const SimplexOptions& options) {
  if (static_cast<int>(lp.objective.size()) != lp.num_variables) {
    throw std::invalid_argument("LP objective has wrong length");
  }
  Tableau<Scalar> tableau(lp, options);
  return tableau.Run(lp.objective);
}

template LpResult<double> SolveDense(const LinearProgram<double>&,
                                     const SimplexOptions&);
template LpResult<Rational> SolveDense(const LinearProgram<Rational>&,
                                       const SimplexOptions&);

}  // namespace minmax
