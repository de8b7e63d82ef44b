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
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "minmax/derand.h"
#include "minmax/tail_bound.h"
#include "test_util.h"

namespace minmax {
namespace {

using testing::Contains;
using testing::ErrorOf;
using testing::MakeMatrix;

// Canonical num/den (GMP arithmetic requires canonical operands).
Rational Q(long num, long den) {
  Rational v(num, den);
  v.canonicalize();
  return v;
}

Matrix<double> RandomMatrix(std::mt19937_64& rng, int m, int n, bool binary) {
  Matrix<double> a(m, n);
  std::uniform_real_distribution<double> u(0, 1);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) a(r, c) = binary ? (u(rng) < 0.5 ? 1.0 : 0.0) : u(rng);
  }
  return a;
}

// Random x in [0,1]^n with integral mass p (entries repaired in order).
std::vector<double> RandomFractional(std::mt19937_64& rng, int n, int p) {
  std::vector<double> x(n);
  std::uniform_real_distribution<double> u(0, 1);
  for (double& v : x) v = u(rng);
  double total = 0;
  for (double v : x) total += v;
  for (double& v : x) v *= p / total;
  // Push any overflow above 1 onto later entries.
  double carry = 0;
  for (int pass = 0; pass < 2; ++pass) {
    for (double& v : x) {
      v += carry;
      carry = 0;
      if (v > 1) {
        carry = v - 1;
        v = 1;
      }
    }
  }
  return SnapToIntegralMass(x);
}

// Direct (non-log) evaluation of the estimator.
double OracleEstimator(const Matrix<double>& a, const std::vector<double>& x0,
                       const std::vector<double>& x, double q) {
  double total = 0;
  for (int r = 0; r < a.rows(); ++r) {
    double s = 0;
    for (int i = 0; i < a.cols(); ++i) s += a(r, i) * x0[i];
    const TailBound tb = DeltaBound(std::max(1.0, s), q);
    double prod = 1;
    for (int i = 0; i < a.cols(); ++i) {
      prod *= 1 + x[i] * (std::pow(1 + tb.delta, a(r, i)) - 1);
    }
    total += prod / std::pow(1 + tb.delta, s + tb.deviation);
  }
  return total;
}

TEST_CASE("estimator matches a direct evaluation") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 40; ++t) {
    const int m = 1 + t % 5, n = 2 + t % 9;
    const Matrix<double> a = RandomMatrix(rng, m, n, t % 2 == 0);
    const std::vector<double> x = RandomFractional(rng, n, 1 + t % (n - 1));
    const double q = 1.0 / (2 * m);
    const PessimisticEstimator est(a, x, q);
    CHECK(est.value() == doctest::Approx(OracleEstimator(a, x, x, q)).epsilon(1e-10));
    CHECK(est.value() <= 0.5 + 1e-12);
    for (int r = 0; r < m; ++r) {
      CHECK(est.row_thresholds()[r] ==
            doctest::Approx(est.row_masses()[r] +
                            DeltaBound(std::max(1.0, est.row_masses()[r]), q).deviation));
    }
    // A trial move agrees with the oracle at the moved point.
    std::vector<double> moved = x;
    const double d = std::min(1 - x[0], x[1]);
    moved[0] += d;
    moved[1] -= d;
    CHECK(est.ValueAfterMove(0, 1, moved[0], moved[1]) ==
          doctest::Approx(OracleEstimator(a, x, moved, q)).epsilon(1e-10));
    CHECK(est.Recompute(moved) ==
          doctest::Approx(OracleEstimator(a, x, moved, q)).epsilon(1e-10));
  }
}

TEST_CASE("estimator is a supermartingale under pairing moves") {
  // The probability-weighted average of the two branches never exceeds the
  // current value, so the smaller branch never increases it.
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const int m = 1 + t % 4, n = 2 + t % 7;
    const Matrix<double> a = RandomMatrix(rng, m, n, false);
    const std::vector<double> x = RandomFractional(rng, n, 1 + t % (n - 1));
    const PessimisticEstimator est(a, x, 1.0 / (2 * m));
    std::vector<int> frac;
    for (int i = 0; i < n; ++i) {
      if (x[i] > 0 && x[i] < 1) frac.push_back(i);
    }
    if (frac.size() < 2) continue;
    const int i = frac[0], j = frac[1];
    const double d1 = std::min(1 - x[i], x[j]);
    const double d2 = std::min(x[i], 1 - x[j]);
    const double u1 = est.ValueAfterMove(i, j, x[i] + d1, x[j] - d1);
    const double u2 = est.ValueAfterMove(i, j, x[i] - d2, x[j] + d2);
    const double avg = (d2 * u1 + d1 * u2) / (d1 + d2);
    CHECK(avg <= est.value() * (1 + 1e-12));
    CHECK(std::min(u1, u2) <= est.value() * (1 + 1e-12));
  }
}

TEST_CASE("estimator rejects entries outside [0,1]") {
  const std::vector<double> x{0.5, 0.5};
  CHECK(Contains(ErrorOf([&] { PessimisticEstimator(MakeMatrix({{0.5, 1.5}}), x, 0.25); }),
                 "outside [0,1]"));
  CHECK(Contains(ErrorOf([&] { PessimisticEstimator(MakeMatrix({{0.5}}), x, 0.25); }),
                 "disagree"));
}

TEST_CASE("derandomized rounding keeps the row guarantee") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 150; ++t) {
    const int m = 1 + t % 8, n = 2 + t % 30;
    const Matrix<double> a = RandomMatrix(rng, m, n, t % 3 == 0);
    const int p = 1 + t % (n - 1);
    const std::vector<double> x = RandomFractional(rng, n, p);
    const RoundingOutcome out = DerandRound(a, x);
    REQUIRE(out.Cardinality() == p);
    CHECK(out.path == "estimator");
    CHECK(out.estimator_trace.front() <= 0.5 + 1e-12);
    for (size_t k = 1; k < out.estimator_trace.size(); ++k) {
      CHECK(out.estimator_trace[k] <=
            out.estimator_trace[k - 1] * (1 + 1e-8) + 1e-300);
    }
    CHECK(out.estimator_trace.back() < 1);
    for (int r = 0; r < m; ++r) {
      double s = 0, ay = 0;
      for (int i = 0; i < n; ++i) {
        s += a(r, i) * x[i];
        ay += a(r, i) * out.y[i];
      }
      const double q = 1.0 / (2 * m);
      CHECK(ay == doctest::Approx(out.row_values[r]));
      CHECK(ay < s + DeltaBound(std::max(1.0, s), q).deviation + 1e-9);
    }
  }
}

TEST_CASE("derandomized rounding: small cases") {
  // Integral input is returned unchanged.
  const RoundingOutcome same = DerandRound(MakeMatrix({{1, 1, 1}}), std::vector<double>{1, 0, 1});
  CHECK(same.y == std::vector<int>{1, 0, 1});
  CHECK(same.steps == 0);
  // Symmetric tie: the first branch wins, so item 0 is chosen.
  const RoundingOutcome tie = DerandRound(MakeMatrix({{1, 1}}), std::vector<double>{0.5, 0.5});
  CHECK(tie.y == std::vector<int>{1, 0});
  // A row that penalizes item 0 steers the choice to item 1.
  const RoundingOutcome steer =
      DerandRound(MakeMatrix({{1, 0}, {1, 0}}), std::vector<double>{0.5, 0.5});
  CHECK(steer.y == std::vector<int>{0, 1});
  CHECK(steer.seed == std::nullopt);
}

TEST_CASE("derandomized rounding is deterministic") {
  std::mt19937_64 rng(4);
  const Matrix<double> a = RandomMatrix(rng, 6, 40, false);
  const std::vector<double> x = RandomFractional(rng, 40, 7);
  const RoundingOutcome first = DerandRound(a, x);
  for (int k = 0; k < 3; ++k) {
    const RoundingOutcome again = DerandRound(a, x);
    CHECK(again.y == first.y);
    CHECK(again.estimator_trace == first.estimator_trace);
  }
}

TEST_CASE("bit depth") {
  CHECK(BitDepth(1) == 1);
  CHECK(BitDepth(2) == 1);
  CHECK(BitDepth(3) == 2);
  CHECK(BitDepth(4) == 2);
  CHECK(BitDepth(5) == 3);
  CHECK(BitDepth(1000) == 10);
  CHECK(BitDepth(1024) == 10);
  CHECK(BitDepth(1025) == 11);
}

TEST_CASE("bit decomposition of rationals against the digit oracle") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 50; ++t) {
    const int m = 1 + t % 4, n = 1 + t % 13;
    Matrix<Rational> a(m, n);
    std::uniform_int_distribution<int> den(1, 50);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < n; ++c) {
        const int d = den(rng);
        a(r, c) = Rational(std::uniform_int_distribution<int>(0, d)(rng), d);
        a(r, c).canonicalize();
      }
    }
    const BitDecomposition bits = BitDecompose(a);
    const int ell = BitDepth(n);
    REQUIRE(bits.ell == ell);
    REQUIRE(static_cast<int>(bits.layers.size()) == ell);
    const Matrix<double> approx = bits.Approximation();
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < n; ++c) {
        // Oracle: j-th binary digit of a = floor(a 2^j) - 2 floor(a 2^(j-1)),
        // with 1 mapped to all ones.
        Rational v = a(r, c);
        for (int j = 1; j <= ell; ++j) {
          int digit;
          if (v == 1) {
            digit = 1;
          } else {
            Rational scaled = v * Rational(mpz_class(1) << j);
            Rational half = v * Rational(mpz_class(1) << (j - 1));
            const mpz_class hi = scaled.get_num() / scaled.get_den();
            const mpz_class lo = half.get_num() / half.get_den();
            digit = static_cast<int>(mpz_class(hi - 2 * lo).get_si());
          }
          CHECK(bits.layers[j - 1](r, c) == digit);
        }
        const double err = ToDouble(a(r, c)) - approx(r, c);
        CHECK(err >= -1e-15);
        CHECK(err <= std::ldexp(1.0, -ell) + 1e-15);
      }
    }
    const Matrix<double> stacked = bits.Stacked();
    CHECK(stacked.rows() == m * ell);
    CHECK(stacked.cols() == n);
  }
}

TEST_CASE("bit decomposition: ones and binary matrices") {
  Matrix<Rational> a(1, 4);
  a(0, 0) = 1;
  a(0, 1) = 0;
  a(0, 2) = Rational(1, 2);
  a(0, 3) = Rational(3, 4);
  const BitDecomposition bits = BitDecompose(a);
  REQUIRE(bits.ell == 2);
  CHECK(bits.layers[0](0, 0) == 1);
  CHECK(bits.layers[1](0, 0) == 1);
  CHECK(bits.layers[0](0, 1) == 0);
  CHECK(bits.layers[1](0, 1) == 0);
  CHECK(bits.layers[0](0, 2) == 1);
  CHECK(bits.layers[1](0, 2) == 0);
  CHECK(bits.layers[0](0, 3) == 1);
  CHECK(bits.layers[1](0, 3) == 1);
  // A binary matrix reproduces itself in every layer.
  const Matrix<double> binary = MakeMatrix({{1, 0, 1, 1, 0}, {0, 0, 1, 0, 1}});
  const BitDecomposition b2 = BitDecompose(binary);
  for (const auto& layer : b2.layers) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 5; ++c) CHECK(layer(r, c) == binary(r, c));
    }
  }
  CHECK(Contains(ErrorOf([] { BitDecompose(MakeMatrix({{1.5}})); }), "outside"));
}

TEST_CASE("bit decomposition: double and rational agree on dyadic inputs") {
  std::mt19937_64 rng(7);
  Matrix<double> d(3, 9);
  Matrix<Rational> q(3, 9);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 9; ++c) {
      const int num = std::uniform_int_distribution<int>(0, 64)(rng);
      d(r, c) = num / 64.0;
      q(r, c) = Rational(num, 64);
      q(r, c).canonicalize();
    }
  }
  const BitDecomposition a = BitDecompose(d), b = BitDecompose(q);
  for (int j = 0; j < a.ell; ++j) CHECK(a.layers[j] == b.layers[j]);
}

int CountFractional(const std::vector<Rational>& x) {
  int f = 0;
  for (const Rational& v : x) f += sgn(v) > 0 && v < 1;
  return f;
}

TEST_CASE("exact reduction preserves A x and the mass") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 60; ++t) {
    const int m = 1 + t % 4, n = 3 + t % 14;
    Matrix<Rational> a(m, n);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < n; ++c) {
        a(r, c) = Rational(std::uniform_int_distribution<int>(0, 8)(rng), 8);
        a(r, c).canonicalize();
      }
    }
    // x_i = k_i / 10 with k_i in 1..9 and sum k_i a multiple of 10.
    std::vector<int> k(n);
    int tenths = 0;
    for (int& v : k) {
      v = std::uniform_int_distribution<int>(1, 9)(rng);
      tenths += v;
    }
    for (int i = 0; tenths % 10 != 0; i = (i + 1) % n) {
      if (k[i] > 1) {
        --k[i];
        --tenths;
      }
    }
    std::vector<Rational> x(n);
    for (int i = 0; i < n; ++i) x[i] = Q(k[i], 10);
    REQUIRE(tenths % 10 == 0);
    const ReductionResult<Rational> res = ReduceFractionals(a, x);
    Rational before_mass = 0, after_mass = 0;
    for (int i = 0; i < n; ++i) {
      before_mass += x[i];
      after_mass += res.x[i];
      CHECK(sgn(res.x[i]) >= 0);
      CHECK(res.x[i] <= 1);
    }
    CHECK(before_mass == after_mass);
    CHECK(Multiply(a, std::span<const Rational>(x)) ==
          Multiply(a, std::span<const Rational>(res.x)));
    CHECK(CountFractional(res.x) <= m + 1);
    for (const auto& step : res.steps) {
      // A eps = 0 and sum eps = 0, exactly.
      Rational sum = 0;
      for (const Rational& e : step.eps) sum += e;
      CHECK(sgn(sum) == 0);
      for (int r = 0; r < m; ++r) {
        Rational dot = 0;
        for (size_t k = 0; k < step.support.size(); ++k) {
          dot += a(r, step.support[k]) * step.eps[k];
        }
        CHECK(sgn(dot) == 0);
      }
      CHECK((step.step == step.step_forward || step.step == -step.step_backward));
    }
  }
}

TEST_CASE("float reduction preserves A x to rounding error") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 60; ++t) {
    const int m = 1 + t % 5, n = 4 + t % 30;
    const Matrix<double> a = RandomMatrix(rng, m, n, false);
    const std::vector<double> x = RandomFractional(rng, n, 1 + t % (n - 2));
    const ReductionResult<double> res = ReduceFractionals(a, x);
    const auto before = Multiply(a, std::span<const double>(x));
    const auto after = Multiply(a, std::span<const double>(res.x));
    for (int r = 0; r < m; ++r) CHECK(after[r] == doctest::Approx(before[r]).epsilon(1e-9));
    int f = 0;
    for (double v : res.x) f += v > 0 && v < 1;
    CHECK(f <= m + 1);
  }
}

// Brute force over every 0/1 vector with the right mass that agrees with x
// on its integral entries.
double OracleExhaustive(const Matrix<double>& a, const std::vector<double>& x) {
  const int n = a.cols();
  double mass = 0;
  for (double v : x) mass += v;
  const int p = static_cast<int>(std::lround(mass));
  std::vector<double> scale(a.rows());
  for (int r = 0; r < a.rows(); ++r) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += a(r, i) * x[i];
    scale[r] = std::max(1.0, s);
  }
  double best = std::numeric_limits<double>::infinity();
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != p) continue;
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      const int bit = (mask >> i) & 1;
      if ((x[i] == 0 && bit) || (x[i] == 1 && !bit)) ok = false;
    }
    if (!ok) continue;
    double worst = 0;
    for (int r = 0; r < a.rows(); ++r) {
      double v = 0;
      for (int i = 0; i < n; ++i) v += a(r, i) * ((mask >> i) & 1);
      worst = std::max(worst, v / scale[r]);
    }
    best = std::min(best, worst);
  }
  return best;
}

TEST_CASE("exhaustive rounding matches brute force") {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 100; ++t) {
    const int m = 1 + t % 3, n = 3 + t % 8;
    const Matrix<double> a = RandomMatrix(rng, m, n, false);
    std::vector<double> x = RandomFractional(rng, n, 1 + t % (n - 2));
    x = ReduceFractionals(a, x).x;
    x = SnapToIntegralMass(x);
    const RoundingOutcome out = ExhaustiveRound(a, x);
    double worst = 0;
    for (int r = 0; r < m; ++r) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += a(r, i) * x[i];
      worst = std::max(worst, out.row_values[r] / std::max(1.0, s));
    }
    CHECK(worst == doctest::Approx(OracleExhaustive(a, x)).epsilon(1e-12));
    CHECK(out.path == "exhaustive");
  }
  CHECK(Contains(ErrorOf([] {
                   ExhaustiveRound(MakeMatrix({{0.1, 0.2, 0.3}}),
                                   std::vector<double>{0.5, 0.25, 0.25});
                 }),
                 "fractional"));
}

TEST_CASE("ram rounding: route selection and bounds") {
  CHECK(UsesSmallSystemRoute(1, 2));
  CHECK(UsesSmallSystemRoute(3, 8));
  CHECK_FALSE(UsesSmallSystemRoute(3, 7));
  CHECK_FALSE(UsesSmallSystemRoute(40, 1 << 30));

  std::mt19937_64 rng(12);
  for (int t = 0; t < 80; ++t) {
    const int m = 1 + t % 6, n = 3 + t % 40;
    Matrix<Rational> a(m, n);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < n; ++c) {
        a(r, c) = Rational(std::uniform_int_distribution<int>(0, 20)(rng), 20);
        a(r, c).canonicalize();
      }
    }
    const Matrix<double> ad = MapMatrix<double>(a, [](const Rational& v) { return ToDouble(v); });
    const int p = 1 + t % (n - 1);
    const std::vector<double> x = RandomFractional(rng, n, p);
    const RoundingOutcome out = RamRound(a, x);
    REQUIRE(out.Cardinality() == p);
    CHECK(out.path == (UsesSmallSystemRoute(m, n) ? "small-system" : "bit-decomposition"));
    const auto ay = Multiply(ad, std::span<const int>(out.y));
    const auto ax = Multiply(ad, std::span<const double>(x));
    const double q = 1.0 / (2 * m);
    for (int r = 0; r < m; ++r) {
      CHECK(ay[r] == doctest::Approx(out.row_values[r]));
      CHECK(ay[r] <= out.row_bounds[r] + 1e-9);
      if (out.path == "small-system") {
        // Bound relative to the estimator-route guarantee.
        double factor = 0;
        for (int k = 0; k < m; ++k) {
          const double mu = std::max(1.0, ax[k]);
          factor = std::max(factor, (ax[k] + DeltaBound(mu, q).deviation) / mu);
        }
        CHECK(out.row_bounds[r] == doctest::Approx(std::max(1.0, ax[r]) * factor));
      }
    }
  }
}

TEST_CASE("ram rounding is deterministic") {
  std::mt19937_64 rng(13);
  const Matrix<double> a = RandomMatrix(rng, 5, 30, false);
  const std::vector<double> x = RandomFractional(rng, 30, 6);
  const RoundingOutcome first = RamRound(a, x);
  CHECK(first.path == "bit-decomposition");
  for (int k = 0; k < 3; ++k) CHECK(RamRound(a, x).y == first.y);
}

}  // namespace
}  // namespace minmax
