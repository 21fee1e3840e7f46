// Copyright 2026 The cfgrowth Authors
//
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

// Arbitrary-precision scalars and the two interval carriers used everywhere:
// RationalInterval for exact enclosures, RealInterval for enclosures of
// logarithms and log ratios (endpoints are doubles rounded outward).

#ifndef CFGROWTH_NUMERIC_HPP_
#define CFGROWTH_NUMERIC_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace cfgrowth {

using BigInt = mpz_class;
using Rational = mpq_class;

// Exact closed interval [lo, hi].
struct RationalInterval {
  Rational lo;
  Rational hi;

  RationalInterval() = default;
  RationalInterval(Rational l, Rational h);

  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  Rational width() const { return hi - lo; }
  RationalInterval scaled(const Rational& factor) const;

  friend bool operator==(const RationalInterval& a, const RationalInterval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

// Closed interval with double endpoints. Producers round outward, so the
// mathematical value is guaranteed to lie inside.
struct RealInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return lo <= v && v <= hi; }
  double width() const { return hi - lo; }
  double midpoint() const { return lo + 0.5 * (hi - lo); }
  // Largest distance from `v` to any point of the interval.
  double max_distance(double v) const;

  friend bool operator==(const RealInterval&, const RealInterval&) = default;
};

// Relative slack applied to every logarithm enclosure.
inline constexpr double kLogRelativeSlack = 1e-12;

// Enclosure of ln(v) for v > 0. Uses the bit length plus the leading 53-bit
// mantissa window, so the cost is independent of the size of v.
RealInterval log_enclosure(const BigInt& v);
RealInterval log_enclosure(const Rational& v);

// Outward-rounded quotient of two intervals; `den` must not contain zero.
RealInterval divide(const RealInterval& num, const RealInterval& den);

std::size_t bit_length(const BigInt& v);
std::size_t decimal_digits(const BigInt& v);  // of |v|; 1 for zero

enum class Rounding { down, up };

// Scientific notation "d.ddd…e±X" with `significant` digits, rounded in the
// given direction. Exact: works for rationals far outside double range.
std::string format_scientific(const Rational& v, int significant,
                              Rounding rounding);

// Shortest decimal string that round-trips to `v`.
std::string format_double(double v);

// Decimal string of `v`, optionally elided to "first…last (N digits)" when it
// has more than `max_digits` digits (0 means never elide).
std::string format_bigint(const BigInt& v, std::size_t max_digits = 0);

// Accepts "7/17", "-3", "0.35", "1e-3". Decimal inputs are converted exactly.
Rational parse_rational(std::string_view text);
BigInt parse_bigint(std::string_view text);

// Exact decimal or fraction form: "7/10", "3", "-1/2".
std::string to_string(const Rational& v);

}  // namespace cfgrowth

#endif  // CFGROWTH_NUMERIC_HPP_
