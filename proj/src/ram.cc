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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <type_traits>

#include "minmax/derand.h"
#include "minmax/tail_bound.h"

namespace minmax {
namespace {

template <typename T>
constexpr bool kExact = std::is_same_v<T, Rational>;

template <typename T>
bool IsFractional(const T& v) {
  return v != T(0) && v != T(1);
}

template <typename T>
T Abs(const T& v) {
  if constexpr (kExact<T>) {
    return abs(v);
  } else {
    return std::fabs(v);
  }
}

// A nonzero vector in the null space of `m` (rows < cols), by Gauss-Jordan
// elimination with partial pivoting in the floating-point case.
template <typename T>
std::vector<T> NullVector(Matrix<T> m) {
  const int rows = m.rows(), cols = m.cols();
  std::vector<int> pivot_col_of_row;
  std::vector<bool> is_pivot(cols, false);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int best = -1;
    T best_abs(0);
    for (int i = r; i < rows; ++i) {
      const T mag = Abs(m(i, c));
      if constexpr (kExact<T>) {
        if (mag != 0) {
          best = i;
          break;
        }
      } else {
        if (mag > best_abs) {
          best_abs = mag;
          best = i;
        }
      }
    }
    if (best < 0) continue;
    if constexpr (!kExact<T>) {
      if (best_abs <= 1e-12) continue;
    }
    for (int j = 0; j < cols; ++j) std::swap(m(r, j), m(best, j));
    const T inv = T(1) / m(r, c);
    for (int j = 0; j < cols; ++j) m(r, j) *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == T(0)) continue;
      const T factor = m(i, c);
      for (int j = 0; j < cols; ++j) m(i, j) -= factor * m(r, j);
    }
    is_pivot[c] = true;
    pivot_col_of_row.push_back(c);
    ++r;
  }
  int free_col = 0;
  while (free_col < cols && is_pivot[free_col]) ++free_col;
  std::vector<T> eps(cols, T(0));
  eps[free_col] = T(1);
  for (int i = 0; i < static_cast<int>(pivot_col_of_row.size()); ++i) {
    eps[pivot_col_of_row[i]] = -m(i, free_col);
  }
  return eps;
}

template <typename T>
int CountFractional(const std::vector<T>& x) {
  int count = 0;
  for (const T& v : x) count += IsFractional(v) ? 1 : 0;
  return count;
}

// Row values of the fixed (integral) part plus the fractional candidates.
struct CandidateScorer {
  const Matrix<double>& a;
  std::vector<double> scale;  // max(1, (A x)_r)
  std::vector<double> base;   // A restricted to the entries already at 1

  double Score(const std::vector<int>& chosen) const {
    double worst = 0.0;
    for (int r = 0; r < a.rows(); ++r) {
      double v = base[r];
      for (int i : chosen) v += a(r, i);
      worst = std::max(worst, v / scale[r]);
    }
    return worst;
  }
};

RoundingOutcome SmallSystemRound(const Matrix<double>& a,
                                 const std::vector<double>& x) {
  const int m = a.rows();
  ReductionResult<double> reduced = ReduceFractionals(a, x);
  RoundingOutcome out = ExhaustiveRound(a, reduced.x);
  out.path = "small-system";
  out.steps += static_cast<int>(reduced.steps.size());
  // The estimator-guided rounding of the reduced vector would reach
  // (A y)_r < s_r + Delta_r, so the exhaustive optimum is no worse in
  // normalized terms than the worst such row.
  const std::vector<double> masses = Multiply(a, std::span<const double>(x));
  const double q = m > 0 ? 1.0 / (2.0 * m) : 0.5;
  double factor = 0.0;
  for (int r = 0; r < m; ++r) {
    const double mu = std::max(1.0, masses[r]);
    factor = std::max(factor, (masses[r] + DeltaBound(mu, q).deviation) / mu);
  }
  out.row_bounds.resize(m);
  for (int r = 0; r < m; ++r) {
    out.row_bounds[r] = std::max(1.0, masses[r]) * factor;
  }
  return out;
}

RoundingOutcome DecompositionRound(const Matrix<double>& a,
                                   const BitDecomposition& bits,
                                   const std::vector<double>& x) {
  const int m = a.rows();
  const Matrix<double> stacked = bits.Stacked();
  DerandOptions options;
  options.failure_prob = 1.0 / (2.0 * stacked.rows());
  RoundingOutcome inner = DerandRound(stacked, x, options);

  RoundingOutcome out;
  out.y = std::move(inner.y);
  out.selected = std::move(inner.selected);
  out.estimator_trace = std::move(inner.estimator_trace);
  out.steps = inner.steps;
  out.path = "bit-decomposition";
  AttachRowValues(a, out);
  // (A y)_r <= 1 + (Ã y)_r and each layer row obeys its estimator
  // threshold, so (A y)_r <= 1 + sum_j 2^-j [(A^(j) x)_r + Delta_{j,r}].
  out.row_bounds.assign(m, 1.0);
  for (int j = 0; j < bits.ell; ++j) {
    const double weight = std::ldexp(1.0, -(j + 1));
    for (int r = 0; r < m; ++r) {
      out.row_bounds[r] += weight * inner.row_bounds[j * m + r];
    }
  }
  return out;
}

RoundingOutcome RamRoundImpl(const Matrix<double>& a,
                             const BitDecomposition& bits,
                             std::span<const double> x) {
  if (static_cast<int>(x.size()) != a.cols()) {
    throw std::invalid_argument("RamRound: x and A disagree in length");
  }
  std::vector<double> v = SnapToIntegralMass(x);
  if (UsesSmallSystemRoute(a.rows(), a.cols())) return SmallSystemRound(a, v);
  return DecompositionRound(a, bits, v);
}

}  // namespace

int BitDepth(int n) {
  int ell = 0;
  while ((int64_t{1} << ell) < n) ++ell;
  return std::max(ell, 1);
}

Matrix<double> BitDecomposition::Approximation() const {
  if (layers.empty()) return {};
  Matrix<double> out(layers[0].rows(), layers[0].cols(), 0.0);
  for (int j = 0; j < ell; ++j) {
    const double weight = std::ldexp(1.0, -(j + 1));
    for (int r = 0; r < out.rows(); ++r) {
      for (int c = 0; c < out.cols(); ++c) {
        if (layers[j](r, c)) out(r, c) += weight;
      }
    }
  }
  return out;
}

Matrix<double> BitDecomposition::Stacked() const {
  if (layers.empty()) return {};
  const int m = layers[0].rows(), n = layers[0].cols();
  Matrix<double> out(m * ell, n, 0.0);
  for (int j = 0; j < ell; ++j) {
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < n; ++c) out(j * m + r, c) = layers[j](r, c);
    }
  }
  return out;
}

BitDecomposition BitDecompose(const Matrix<Rational>& a) {
  BitDecomposition out;
  out.ell = BitDepth(a.cols());
  out.layers.assign(out.ell, Matrix<uint8_t>(a.rows(), a.cols(), 0));
  const mpz_class full = mpz_class(1) << out.ell;
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) {
      const Rational& v = a(r, c);
      if (sgn(v) < 0 || v > 1) {
        throw std::invalid_argument("BitDecompose: entry outside [0,1]");
      }
      mpz_class digits = (v.get_num() << out.ell) / v.get_den();  // floor
      if (digits == full) digits = full - 1;
      for (int j = 0; j < out.ell; ++j) {
        out.layers[j](r, c) = mpz_tstbit(digits.get_mpz_t(), out.ell - 1 - j);
      }
    }
  }
  return out;
}

BitDecomposition BitDecompose(const Matrix<double>& a) {
  BitDecomposition out;
  out.ell = BitDepth(a.cols());
  out.layers.assign(out.ell, Matrix<uint8_t>(a.rows(), a.cols(), 0));
  const int64_t full = int64_t{1} << out.ell;
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) {
      const double v = a(r, c);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("BitDecompose: entry outside [0,1]");
      }
      // Scaling by a power of two is exact.
      int64_t digits = static_cast<int64_t>(std::floor(std::ldexp(v, out.ell)));
      if (digits == full) digits = full - 1;
      for (int j = 0; j < out.ell; ++j) {
        out.layers[j](r, c) = (digits >> (out.ell - 1 - j)) & 1;
      }
    }
  }
  return out;
}

template <typename T>
ReductionResult<T> ReduceFractionals(const Matrix<T>& a, std::vector<T> x) {
  if (static_cast<int>(x.size()) != a.cols()) {
    throw std::invalid_argument("ReduceFractionals: x and A disagree in length");
  }
  const int m = a.rows();
  ReductionResult<T> out;
  if constexpr (!kExact<T>) {
    for (T& v : x) {
      if (std::fabs(v) <= 1e-12) v = 0.0;
      if (std::fabs(v - 1.0) <= 1e-12) v = 1.0;
    }
  }
  int fractional = CountFractional(x);
  while (fractional > m + 1) {
    ReductionStep<T> step;
    for (int i = 0; i < static_cast<int>(x.size()) &&
                    static_cast<int>(step.support.size()) < m + 2;
         ++i) {
      if (IsFractional(x[i])) step.support.push_back(i);
    }
    const int k = m + 2;
    Matrix<T> system(m + 1, k);
    for (int c = 0; c < k; ++c) {
      for (int r = 0; r < m; ++r) system(r, c) = a(r, step.support[c]);
      system(m, c) = T(1);
    }
    step.eps = NullVector(system);
    if constexpr (!kExact<T>) {
      // Fall back to exact elimination when the float null vector is poor.
      double residual = 0.0, scale = 1.0, eps_norm = 0.0;
      for (int c = 0; c < k; ++c) eps_norm = std::max(eps_norm, std::fabs(step.eps[c]));
      for (int r = 0; r <= m; ++r) {
        double row = 0.0;
        for (int c = 0; c < k; ++c) {
          row += system(r, c) * step.eps[c];
          scale = std::max(scale, std::fabs(system(r, c)));
        }
        residual = std::max(residual, std::fabs(row));
      }
      if (residual > 1e-9 * scale * eps_norm) {
        const auto exact = NullVector(
            MapMatrix<Rational>(system, [](double v) { return FromDouble(v); }));
        for (int c = 0; c < k; ++c) step.eps[c] = exact[c].get_d();
      }
    }
    // Largest steps to the box boundary in each direction.
    std::optional<T> forward, backward;
    int forward_hit = -1, backward_hit = -1;
    for (int c = 0; c < k; ++c) {
      const T& e = step.eps[c];
      const T& xv = x[step.support[c]];
      if (e == T(0)) continue;
      const T room_up = T(1) - xv;
      const T magnitude = Abs(e);
      const T up = e > T(0) ? T(room_up / magnitude) : T(xv / magnitude);
      const T down = e > T(0) ? T(xv / magnitude) : T(room_up / magnitude);
      if (!forward || up < *forward) {
        forward = up;
        forward_hit = c;
      }
      if (!backward || down < *backward) {
        backward = down;
        backward_hit = c;
      }
    }
    step.step_forward = *forward;
    step.step_backward = *backward;
    const bool go_forward = !(*backward < *forward);
    step.step = go_forward ? *forward : T(-*backward);
    const int hit = go_forward ? forward_hit : backward_hit;
    for (int c = 0; c < k; ++c) {
      T& xv = x[step.support[c]];
      xv += step.step * step.eps[c];
      if constexpr (!kExact<T>) {
        if (std::fabs(xv) <= 1e-12) xv = 0.0;
        if (std::fabs(xv - 1.0) <= 1e-12) xv = 1.0;
        xv = std::clamp(xv, 0.0, 1.0);
      }
    }
    if constexpr (!kExact<T>) {
      T& xv = x[step.support[hit]];
      xv = xv < 0.5 ? 0.0 : 1.0;
    }
    const int now = CountFractional(x);
    if (now >= fractional) {
      throw std::logic_error("ReduceFractionals made no progress");
    }
    fractional = now;
    out.steps.push_back(std::move(step));
  }
  out.x = std::move(x);
  return out;
}

template ReductionResult<double> ReduceFractionals(const Matrix<double>&,
                                                   std::vector<double>);
template ReductionResult<Rational> ReduceFractionals(const Matrix<Rational>&,
                                                     std::vector<Rational>);

RoundingOutcome ExhaustiveRound(const Matrix<double>& a,
                                std::span<const double> x) {
  if (static_cast<int>(x.size()) != a.cols()) {
    throw std::invalid_argument("ExhaustiveRound: x and A disagree in length");
  }
  const std::vector<double> v = SnapToIntegralMass(x);
  const int m = a.rows();
  std::vector<int> fractional;
  int ones = 0;
  for (int i = 0; i < static_cast<int>(v.size()); ++i) {
    if (v[i] == 1.0) {
      ++ones;
    } else if (v[i] != 0.0) {
      fractional.push_back(i);
    }
  }
  const int f = static_cast<int>(fractional.size());
  if (f > m + 1) {
    throw std::invalid_argument("ExhaustiveRound: " + std::to_string(f) +
                                " fractional entries exceed rows + 1");
  }
  double mass = 0.0;
  for (double e : v) mass += e;
  const int need = static_cast<int>(std::lround(mass)) - ones;
  if (need < 0 || need > f) {
    throw RoundingError("ExhaustiveRound: no completion matches the cardinality");
  }

  CandidateScorer scorer{a, {}, {}};
  const std::vector<double> masses = Multiply(a, std::span<const double>(v));
  for (int r = 0; r < m; ++r) scorer.scale.push_back(std::max(1.0, masses[r]));
  scorer.base.assign(m, 0.0);
  for (int r = 0; r < m; ++r) {
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
      if (v[i] == 1.0) scorer.base[r] += a(r, i);
    }
  }

  // Lexicographic walk over need-subsets of the fractional positions.
  std::vector<int> combo(need);
  for (int j = 0; j < need; ++j) combo[j] = j;
  std::vector<int> best_combo;
  double best = std::numeric_limits<double>::infinity();
  int candidates = 0;
  std::vector<int> chosen(need);
  while (true) {
    for (int j = 0; j < need; ++j) chosen[j] = fractional[combo[j]];
    const double score = scorer.Score(chosen);
    ++candidates;
    if (score < best) {
      best = score;
      best_combo = chosen;
    }
    int pos = need - 1;
    while (pos >= 0 && combo[pos] == f - need + pos) --pos;
    if (pos < 0) break;
    ++combo[pos];
    for (int j = pos + 1; j < need; ++j) combo[j] = combo[j - 1] + 1;
  }

  RoundingOutcome out;
  out.y.assign(v.size(), 0);
  for (size_t i = 0; i < v.size(); ++i) out.y[i] = v[i] == 1.0 ? 1 : 0;
  for (int i : best_combo) out.y[i] = 1;
  for (size_t i = 0; i < v.size(); ++i) {
    if (out.y[i]) out.selected.push_back(static_cast<int>(i));
  }
  out.steps = candidates;
  out.path = "exhaustive";
  AttachRowValues(a, out);
  return out;
}

bool UsesSmallSystemRoute(int rows, int cols) {
  if (rows >= 40) return false;
  return (int64_t{1} << (rows + 1)) <= 2 * int64_t{cols};
}

RoundingOutcome RamRound(const Matrix<Rational>& a, std::span<const double> x) {
  const Matrix<double> approx =
      MapMatrix<double>(a, [](const Rational& q) { return q.get_d(); });
  if (UsesSmallSystemRoute(a.rows(), a.cols())) {
    return RamRoundImpl(approx, BitDecomposition{}, x);
  }
  return RamRoundImpl(approx, BitDecompose(a), x);
}

RoundingOutcome RamRound(const Matrix<double>& a, std::span<const double> x) {
  if (UsesSmallSystemRoute(a.rows(), a.cols())) {
    return RamRoundImpl(a, BitDecomposition{}, x);
  }
  return RamRoundImpl(a, BitDecompose(a), x);
}

}  // namespace minmax
