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

#include "minmax/derand.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "minmax/tail_bound.h"

namespace minmax {

PessimisticEstimator::PessimisticEstimator(const Matrix<double>& a,
                                           std::span<const double> x,
                                           double failure_prob)
    : x_(x.begin(), x.end()), growth_(a.rows(), a.cols()) {
  if (static_cast<int>(x.size()) != a.cols()) {
    throw std::invalid_argument("estimator: x and A disagree in length");
  }
  const int m = a.rows();
  masses_ = Multiply(a, x);
  deltas_.resize(m);
  thresholds_.resize(m);
  log_denominators_.resize(m);
  for (int r = 0; r < m; ++r) {
    for (int i = 0; i < a.cols(); ++i) {
      if (!(a(r, i) >= 0.0 && a(r, i) <= 1.0)) {
        throw std::invalid_argument("estimator: matrix entry outside [0,1] at (" +
                                    std::to_string(r) + "," + std::to_string(i) +
                                    ")");
      }
    }
    const TailBound tb = DeltaBound(std::max(1.0, masses_[r]), failure_prob);
    const double log_base = std::log1p(tb.delta);
    deltas_[r] = tb.delta;
    thresholds_[r] = masses_[r] + tb.deviation;
    log_denominators_[r] = thresholds_[r] * log_base;
    for (int i = 0; i < a.cols(); ++i) {
      growth_(r, i) = std::expm1(a(r, i) * log_base);
    }
  }
  Reset(x);
}

double PessimisticEstimator::Term(int r, double log_product) const {
  return std::exp(log_product - log_denominators_[r]);
}

double PessimisticEstimator::ValueAfterMove(int i, int j, double new_xi,
                                            double new_xj) const {
  double total = 0.0;
  for (int r = 0; r < rows(); ++r) {
    const double log_product = log_products_[r] - LogFactor(r, i, x_[i]) -
                               LogFactor(r, j, x_[j]) + LogFactor(r, i, new_xi) +
                               LogFactor(r, j, new_xj);
    total += Term(r, log_product);
  }
  return total;
}

void PessimisticEstimator::Apply(int i, int j, double new_xi, double new_xj) {
  double total = 0.0;
  for (int r = 0; r < rows(); ++r) {
    log_products_[r] += LogFactor(r, i, new_xi) - LogFactor(r, i, x_[i]) +
                        LogFactor(r, j, new_xj) - LogFactor(r, j, x_[j]);
    total += Term(r, log_products_[r]);
  }
  x_[i] = new_xi;
  x_[j] = new_xj;
  value_ = total;
}

double PessimisticEstimator::Recompute(std::span<const double> x) const {
  double total = 0.0;
  for (int r = 0; r < rows(); ++r) {
    double log_product = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
      log_product += LogFactor(r, static_cast<int>(i), x[i]);
    }
    total += Term(r, log_product);
  }
  return total;
}

void PessimisticEstimator::Reset(std::span<const double> x) {
  x_.assign(x.begin(), x.end());
  log_products_.assign(rows(), 0.0);
  value_ = 0.0;
  for (int r = 0; r < rows(); ++r) {
    for (size_t i = 0; i < x.size(); ++i) {
      log_products_[r] += LogFactor(r, static_cast<int>(i), x[i]);
    }
    value_ += Term(r, log_products_[r]);
  }
}

RoundingOutcome DerandRound(const Matrix<double>& a, std::span<const double> x,
                            const DerandOptions& options) {
  if (static_cast<int>(x.size()) != a.cols()) {
    throw std::invalid_argument("DerandRound: x and A disagree in length");
  }
  std::vector<double> v = SnapToIntegralMass(x);
  const int m = a.rows();
  const double failure_prob =
      options.failure_prob.value_or(m > 0 ? 1.0 / (2.0 * m) : 0.5);
  PessimisticEstimator estimator(a, v, failure_prob);

  RoundingOutcome out;
  out.path = "estimator";
  out.estimator_trace.push_back(estimator.value());
  if (!(estimator.value() < 1.0)) {
    throw std::logic_error("pessimistic estimator starts at " +
                           std::to_string(estimator.value()) + " >= 1");
  }
  auto check_drift = [&](const std::vector<double>& current) {
    const double fresh = estimator.Recompute(current);
    const double scale = std::max(fresh, 1e-300);
    if (std::fabs(fresh - estimator.value()) > options.drift_tolerance * scale) {
      throw std::logic_error("pessimistic estimator drifted: incremental " +
                             std::to_string(estimator.value()) +
                             " vs recomputed " + std::to_string(fresh));
    }
    estimator.Reset(current);
  };

  int steps_since_check = 0;
  out.steps = PairingWalk(
      v,
      [&](int i, int j, double d1, double d2) {
        const double up = estimator.ValueAfterMove(i, j, v[i] + d1, v[j] - d1);
        const double down = estimator.ValueAfterMove(i, j, v[i] - d2, v[j] + d2);
        return up <= down;
      },
      [&](int i, int j, const std::vector<double>& current) {
        estimator.Apply(i, j, current[i], current[j]);
        if (++steps_since_check >= options.recompute_interval) {
          check_drift(current);
          steps_since_check = 0;
        }
        out.estimator_trace.push_back(estimator.value());
      });
  check_drift(v);
  out.estimator_trace.back() = estimator.value();

  out.y.resize(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    out.y[i] = v[i] > 0.5 ? 1 : 0;
    if (out.y[i]) out.selected.push_back(static_cast<int>(i));
  }
  AttachRowValues(a, out);
  out.row_bounds = estimator.row_thresholds();
  return out;
}

}  // namespace minmax
