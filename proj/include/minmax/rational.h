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

#ifndef MINMAX_RATIONAL_H_
#define MINMAX_RATIONAL_H_

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace minmax {

// Exact rational arithmetic (GMP).
using Rational = mpq_class;

inline double ToDouble(const Rational& q) { return q.get_d(); }

// Exact binary value of `value`; `value` must be finite.
Rational FromDouble(double value);

Rational FromInt(int64_t value);

// Canonical "num" or "num/den" text.
std::string ToString(const Rational& q);

// Parses the ToString form.
Rational ParseRational(const std::string& text);

// Smallest-denominator rational within `tolerance` of `value`
// (continued-fraction convergents).
Rational Rationalize(double value, double tolerance);

std::vector<double> ToDoubles(std::span<const Rational> values);

}  // namespace minmax

#endif  // MINMAX_RATIONAL_H_
