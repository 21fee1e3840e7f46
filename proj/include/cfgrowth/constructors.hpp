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

// Partial-quotient sequences with a prescribed growth statistic.
//
// With a_{n+1} ~ q_n^t the approximation error is about q_n^-(t+2), so
// R_n -> t/(t+2). Solving t/(t+2) = z gives t = 2z/(1-z). The endpoint z = 1
// uses a_{n+1} = q_n^(2n) + 1, which forces R_n -> 1.

#ifndef CFGROWTH_CONSTRUCTORS_HPP_
#define CFGROWTH_CONSTRUCTORS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>

#include "cfgrowth/cf_core.hpp"
#include "cfgrowth/numeric.hpp"

namespace cfgrowth::construct {

inline constexpr std::size_t kDefaultMaxDigits = 1'000'000;
inline constexpr std::size_t kMinMaxDigits = 10;

enum class Mode {
  every_step,  // target growth at every index: lim R_n = z
  sparse,      // target growth only at n = 2^k, a_{n+1} = 1 elsewhere
};

struct ConstructionPlan {
  Rational z;
  Mode mode = Mode::every_step;
  // Multiply each quotient by a random factor in [1, 2].
  bool jitter = false;
  std::uint64_t seed = 0;
  // Budget on the decimal digits of q_n.
  std::size_t max_digits = kDefaultMaxDigits;

  // 2z/(1-z), or nullopt for z = 1.
  std::optional<Rational> exponent() const;
  void validate() const;
};

// t = 2z/(1-z) for z in [0, 1).
Rational growth_exponent(const Rational& z);

// ceil(q^t) for q >= 1, t >= 0. Exact unless q^numerator(t) would exceed
// kExactPowerBits, in which case the leading 63 bits are exact and the
// result is rounded up.
inline constexpr std::size_t kExactPowerBits = std::size_t{1} << 26;
BigInt ceil_power(const BigInt& q, const Rational& t);

// Requires z < 1. a_1 = 2, a_{n+1} = max(1, ceil(q_n^t)) (jittered if asked);
// stops before digits(q_{n+1}) would exceed the budget.
cf::CFExpansion construct_f(const ConstructionPlan& plan);

// a_1 = 1, a_{n+1} = q_n^(2n) + 1, exactly `steps` quotients.
cf::CFExpansion construct_f_one(std::size_t steps,
                                std::size_t max_digits = kDefaultMaxDigits);

// S_n -> alpha, via construct_f(alpha + 1). alpha = 0 emits as many
// construct_f_one quotients as the budget allows.
cf::CFExpansion construct_g(const Rational& alpha, ConstructionPlan plan);

}  // namespace cfgrowth::construct

#endif  // CFGROWTH_CONSTRUCTORS_HPP_
