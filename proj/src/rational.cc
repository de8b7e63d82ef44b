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

#include "minmax/rational.h"

#include <cmath>
#include <stdexcept>

namespace minmax {

Rational FromDouble(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("FromDouble: non-finite value");
  }
  Rational q(value);  // mpq_set_d is exact for finite doubles
  q.canonicalize();
  return q;
}

Rational FromInt(int64_t value) {
  mpz_class z;
  // mpz has no portable int64 setter; go through two 32-bit halves.
  const bool negative = value < 0;
  uint64_t magnitude = negative ? (~static_cast<uint64_t>(value) + 1)
                                : static_cast<uint64_t>(value);
  z = static_cast<unsigned long>(magnitude >> 32);
  z <<= 32;
  z += static_cast<unsigned long>(magnitude & 0xffffffffULL);
  if (negative) z = -z;
  return Rational(z);
}

std::string ToString(const Rational& q) { return q.get_str(); }

Rational ParseRational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
  q.canonicalize();
  return q;
}

Rational Rationalize(double value, double tolerance) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("Rationalize: non-finite value");
  }
  const Rational target = FromDouble(value);
  const Rational tol = FromDouble(std::fabs(tolerance));
  // Convergents h/k of the continued fraction of `target`.
  mpz_class h_prev = 1, h = 0, k_prev = 0, k = 1;
  mpz_class num = target.get_num(), den = target.get_den();
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class h_next = a * h_prev + h;
    mpz_class k_next = a * k_prev + k;
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;
    Rational convergent(h_prev, k_prev);
    convergent.canonicalize();
    Rational err = convergent - target;
    if (abs(err) <= tol) return convergent;
    mpz_class rem = num - a * den;
    if (rem == 0) return convergent;
    num = den;
    den = rem;
  }
}

std::vector<double> ToDoubles(std::span<const Rational> values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (const Rational& q : values) out.push_back(q.get_d());
  return out;
}

}  // namespace minmax
