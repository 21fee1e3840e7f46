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

#include "cfgrowth/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <system_error>

#include "cfgrowth/error.hpp"

namespace cfgrowth {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double round_down(double v) { return v == 0.0 ? 0.0 : std::nextafter(v, -kInf); }
double round_up(double v) { return v == 0.0 ? 0.0 : std::nextafter(v, kInf); }

BigInt pow10(unsigned long k) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
  return r;
}

}  // namespace

RationalInterval::RationalInterval(Rational l, Rational h)
    : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) throw_invariant("RationalInterval: lo > hi");
}

RationalInterval RationalInterval::scaled(const Rational& factor) const {
  Rational a = lo * factor;
  Rational b = hi * factor;
  if (a <= b) return {std::move(a), std::move(b)};
  return {std::move(b), std::move(a)};
}

double RealInterval::max_distance(double v) const {
  return std::max(std::fabs(lo - v), std::fabs(hi - v));
}

RealInterval log_enclosure(const BigInt& v) {
  if (sgn(v) <= 0) throw_domain("log_enclosure: argument must be positive");
  if (v == 1) return {0.0, 0.0};
  long exponent = 0;
  // Truncated leading 53 bits: v = d * 2^exponent * (1 + delta), 0 <= delta < 2^-52.
  const double mantissa = mpz_get_d_2exp(&exponent, v.get_mpz_t());
  const double approx =
      std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
  const double slack = kLogRelativeSlack * std::max(1.0, std::fabs(approx));
  return {std::max(0.0, approx - slack), approx + slack};
}

RealInterval log_enclosure(const Rational& v) {
  if (sgn(v) <= 0) throw_domain("log_enclosure: argument must be positive");
  const RealInterval num = log_enclosure(BigInt(v.get_num()));
  const RealInterval den = log_enclosure(BigInt(v.get_den()));
  return {round_down(num.lo - den.hi), round_up(num.hi - den.lo)};
}

RealInterval divide(const RealInterval& num, const RealInterval& den) {
  if (den.lo <= 0.0 && den.hi >= 0.0) {
    throw_invariant("divide: denominator interval contains zero");
  }
  double lo = kInf;
  double hi = -kInf;
  for (double a : {num.lo, num.hi}) {
    for (double b : {den.lo, den.hi}) {
      const double q = a / b;
      lo = std::min(lo, a == 0.0 ? 0.0 : round_down(q));
      hi = std::max(hi, a == 0.0 ? 0.0 : round_up(q));
    }
  }
  return {lo, hi};
}

std::size_t bit_length(const BigInt& v) {
  if (sgn(v) == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

std::size_t decimal_digits(const BigInt& v) {
  if (sgn(v) == 0) return 1;
  std::size_t d = mpz_sizeinbase(v.get_mpz_t(), 10);
  // sizeinbase may overshoot by one.
  if (d > 1 && mpz_cmpabs(v.get_mpz_t(), pow10(d - 1).get_mpz_t()) < 0) --d;
  return d;
}

std::string format_scientific(const Rational& v, int significant,
                              Rounding rounding) {
  if (significant < 1) throw_domain("format_scientific: significant < 1");
  if (sgn(v) == 0) return "0";
  const bool negative = sgn(v) < 0;
  const Rational mag = abs(v);
  // Magnitude rounding direction: rounding a negative value down enlarges it.
  const bool mag_up = (rounding == Rounding::up) != negative;

  const RealInterval ln = log_enclosure(mag);
  long exponent = static_cast<long>(std::floor(ln.midpoint() / std::numbers::ln10));
  const BigInt lower = pow10(static_cast<unsigned long>(significant - 1));
  const BigInt upper = pow10(static_cast<unsigned long>(significant));

  BigInt mantissa;
  for (;;) {
    const long k = significant - 1 - exponent;
    BigInt num = mag.get_num();
    BigInt den = mag.get_den();
    if (k >= 0) {
      num *= pow10(static_cast<unsigned long>(k));
    } else {
      den *= pow10(static_cast<unsigned long>(-k));
    }
    BigInt floor_q;
    mpz_fdiv_q(floor_q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (floor_q < lower) {
      --exponent;
      continue;
    }
    if (floor_q >= upper) {
      ++exponent;
      continue;
    }
    mantissa = floor_q;
    if (mag_up && floor_q * den != num) ++mantissa;
    break;
  }
  if (mantissa == upper) {
    mantissa = lower;
    ++exponent;
  }
  const std::string digits = mantissa.get_str();
  std::string out;
  if (negative) out += '-';
  out += digits[0];
  if (digits.size() > 1) {
    out += '.';
    out.append(digits, 1, std::string::npos);
  }
  out += exponent < 0 ? "e-" : "e+";
  out += std::to_string(exponent < 0 ? -exponent : exponent);
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_bigint(const BigInt& v, std::size_t max_digits) {
  std::string s = v.get_str();
  const std::size_t sign = (!s.empty() && s[0] == '-') ? 1 : 0;
  const std::size_t n = s.size() - sign;
  if (max_digits == 0 || n <= max_digits || max_digits < 2) return s;
  const std::size_t head = max_digits / 2;
  const std::size_t tail = max_digits - head;
  return s.substr(0, sign + head) + "..." + s.substr(s.size() - tail) + " (" +
         std::to_string(n) + " digits)";
}

Rational parse_rational(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> Rational {
    throw_domain("cannot parse rational number '" + original + "'");
  };
  if (text.empty()) return fail();

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_bigint(text.substr(0, slash));
    const BigInt den = parse_bigint(text.substr(slash + 1));
    if (sgn(den) == 0) throw_domain("zero denominator in '" + original + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits += text[i++];
    seen_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits += text[i++];
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) return fail();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    long e = 0;
    const auto res = std::from_chars(text.data() + i, text.data() + text.size(), e);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) return fail();
    if (e > 100000 || e < -100000) return fail();
    scale += e;
    i = text.size();
  }
  if (i != text.size()) return fail();

  BigInt num(digits, 10);
  BigInt den = 1;
  if (scale >= 0) {
    num *= pow10(static_cast<unsigned long>(scale));
  } else {
    den = pow10(static_cast<unsigned long>(-scale));
  }
  if (negative) num = -num;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

BigInt parse_bigint(std::string_view text) {
  std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  if (start == text.size()) throw_domain("cannot parse integer '" + std::string(text) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw_domain("cannot parse integer '" + std::string(text) + "'");
    }
  }
  BigInt v(std::string(text.substr(start)), 10);
  return text[0] == '-' ? BigInt(-v) : v;
}

std::string to_string(const Rational& v) { return v.get_str(); }

}  // namespace cfgrowth
