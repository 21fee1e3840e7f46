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

#include "cfgrowth/constructors.hpp"

#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cfgrowth/error.hpp"

namespace cfgrowth::construct {
namespace {

using cf::CFExpansion;
using cf::ConvergentStepper;

bool exceeds_digits(const BigInt& v, std::size_t max_digits) {
  // bits * log10(2) bounds the digit count from both sides within one.
  const double approx = static_cast<double>(bit_length(v)) * 0.30102999566398120;
  if (approx + 1.0 < static_cast<double>(max_digits)) return false;
  return decimal_digits(v) > max_digits;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// base + floor((base + 1) * U) with U uniform on [0, 1) at 53-bit resolution,
// i.e. a value in [base, 2 base].
BigInt jittered(const BigInt& base, std::mt19937_64& rng) {
  const std::uint64_t k = rng() >> 11;
  BigInt extra = (base + 1) * BigInt(static_cast<unsigned long>(k));
  extra >>= 53;
  return base + extra;
}

}  // namespace

std::optional<Rational> ConstructionPlan::exponent() const {
  if (z == 1) return std::nullopt;
  return growth_exponent(z);
}

void ConstructionPlan::validate() const {
  if (z < 0 || z > 1) {
    throw_domain("target z=" + to_string(z) + " outside the valid range [0,1]");
  }
  if (max_digits < kMinMaxDigits) {
    throw_domain("max_digits must be at least " + std::to_string(kMinMaxDigits));
  }
}

Rational growth_exponent(const Rational& z) {
  if (z < 0 || z >= 1) {
    throw_domain("growth_exponent: z=" + to_string(z) +
                 " must lie in [0,1); use construct_f_one for z = 1");
  }
  Rational t = 2 * z / (1 - z);
  t.canonicalize();
  return t;
}

BigInt ceil_power(const BigInt& q, const Rational& t) {
  if (q < 1) throw_domain("ceil_power: base must be >= 1");
  if (t < 0) throw_domain("ceil_power: exponent must be >= 0");
  if (sgn(t) == 0 || q == 1) return 1;

  const BigInt& num = t.get_num();
  const BigInt& den = t.get_den();
  const double power_bits = num.get_d() * static_cast<double>(bit_length(q));
  if (den.fits_ulong_p() && num.fits_ulong_p() &&
      power_bits <= static_cast<double>(kExactPowerBits)) {
    BigInt power;
    mpz_pow_ui(power.get_mpz_t(), q.get_mpz_t(), num.get_ui());
    BigInt root;
    const int exact =
        mpz_root(root.get_mpz_t(), power.get_mpz_t(), den.get_ui());
    if (!exact) ++root;
    return root;
  }

  // 2^(t log2 q) from the leading mantissa; the fractional part carries 63
  // exact bits, the rest is zero-filled and the result bumped by one.
  const RealInterval ln_q = log_enclosure(q);
  const long double log2_value =
      static_cast<long double>(t.get_d()) * static_cast<long double>(ln_q.midpoint()) /
      std::log(2.0L);
  const long double whole = std::floor(log2_value);
  const long double frac = log2_value - whole;
  const auto mantissa =
      static_cast<unsigned long>(std::ldexp(std::exp2(frac), 62));
  BigInt out(mantissa);
  const long shift = static_cast<long>(whole) - 62;
  if (shift >= 0) {
    out <<= static_cast<mp_bitcnt_t>(shift);
  } else {
    out >>= static_cast<mp_bitcnt_t>(-shift);
  }
  return out + 1;
}

CFExpansion construct_f(const ConstructionPlan& plan) {
  plan.validate();
  if (plan.z == 1) {
    throw_domain("construct_f: z = 1 is realized by construct_f_one");
  }
  const Rational t = growth_exponent(plan.z);
  std::mt19937_64 rng(plan.seed);

  std::vector<BigInt> quotients{BigInt(2)};
  ConvergentStepper s;
  s.advance(quotients.front());
  for (std::size_t n = 1;; ++n) {
    BigInt a = 1;
    if (plan.mode == Mode::every_step || is_power_of_two(n)) {
      a = ceil_power(s.q(), t);
      if (a < 1) a = 1;
      if (plan.jitter) a = jittered(a, rng);
    }
    const BigInt q_next = a * s.q() + s.q_prev();
    if (exceeds_digits(q_next, plan.max_digits)) break;
    s.advance(a);
    quotients.push_back(std::move(a));
  }
  if (quotients.size() < 3) {
    throw_budget("max_digits=" + std::to_string(plan.max_digits) +
                 " is too small to emit three partial quotients for z=" +
                 to_string(plan.z));
  }
  return CFExpansion(std::move(quotients));
}

namespace {

// Emits up to `steps` quotients of the z = 1 family; stops early (or throws,
// if `strict`) once q_{n+1} would exceed the digit budget.
CFExpansion f_one_sequence(std::size_t steps, std::size_t max_digits,
                           bool strict) {
  std::vector<BigInt> quotients{BigInt(1)};
  ConvergentStepper s;
  s.advance(quotients.front());
  for (std::size_t n = 1; n < steps; ++n) {
    BigInt a;
    mpz_pow_ui(a.get_mpz_t(), s.q().get_mpz_t(), 2 * n);
    a += 1;
    const BigInt q_next = a * s.q() + s.q_prev();
    if (exceeds_digits(q_next, max_digits)) {
      if (!strict) break;
      throw_budget("construct_f_one: q_" + std::to_string(n + 1) + " exceeds " +
                   std::to_string(max_digits) + " digits before " +
                   std::to_string(steps) + " quotients were emitted");
    }
    s.advance(a);
    quotients.push_back(std::move(a));
  }
  return CFExpansion(std::move(quotients));
}

}  // namespace

CFExpansion construct_f_one(std::size_t steps, std::size_t max_digits) {
  if (steps < 2) throw_domain("construct_f_one: steps must be >= 2");
  return f_one_sequence(steps, max_digits, /*strict=*/true);
}

CFExpansion construct_g(const Rational& alpha, ConstructionPlan plan) {
  if (alpha < -1 || alpha > 0) {
    throw_domain("construct_g: alpha=" + to_string(alpha) +
                 " outside the valid range [-1,0]");
  }
  if (alpha == 0) {
    plan.z = 1;
    plan.validate();
    CFExpansion cf = f_one_sequence(static_cast<std::size_t>(-1),
                                    plan.max_digits, /*strict=*/false);
    if (cf.size() < 3) {
      throw_budget("max_digits=" + std::to_string(plan.max_digits) +
                   " is too small to emit three partial quotients for alpha=0");
    }
    return cf;
  }
  plan.z = alpha + 1;
  return construct_f(plan);
}

}  // namespace cfgrowth::construct
