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

// Exact continued-fraction engine for numbers in (0,1):
//
//   x = [a1, a2, a3, ...] = 1/(a1 + 1/(a2 + 1/(a3 + ...)))
//
// Convergents p_n/q_n follow p_n = a_n p_{n-1} + p_{n-2} (same for q) from
// the seeds p_0 = 0, q_0 = 1, p_{-1} = 1, q_{-1} = 0, so p_1/q_1 = 1/a1.

#ifndef CFGROWTH_CF_CORE_HPP_
#define CFGROWTH_CF_CORE_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "cfgrowth/numeric.hpp"

namespace cfgrowth::cf {

// Finite prefix a1..aN of positive partial quotients (no integer part).
class CFExpansion {
 public:
  CFExpansion() = default;
  explicit CFExpansion(std::vector<BigInt> quotients);
  CFExpansion(std::initializer_list<long> quotients);

  std::span<const BigInt> quotients() const { return quotients_; }
  std::size_t size() const { return quotients_.size(); }
  bool empty() const { return quotients_.empty(); }
  // 1-based, matching a_n.
  const BigInt& a(std::size_t n) const;

  // Last quotient >= 2 whenever there are at least two quotients.
  bool canonical() const;

  // Prefix a1..a_len.
  CFExpansion prefix(std::size_t len) const;

  friend bool operator==(const CFExpansion& x, const CFExpansion& y) {
    return x.quotients_ == y.quotients_;
  }

 private:
  std::vector<BigInt> quotients_;
};

struct Convergent {
  std::size_t index = 0;
  BigInt p;
  BigInt q;

  Rational value() const { return Rational(p, q); }
};

// Walks the convergent recurrence one quotient at a time, keeping only the
// last two convergents. After k calls to advance(), current() is the k-th
// convergent and previous() the (k-1)-th (the seeds at k = 0).
class ConvergentStepper {
 public:
  ConvergentStepper() = default;

  void advance(const BigInt& a);

  std::size_t index() const { return index_; }
  const BigInt& p() const { return p_; }
  const BigInt& q() const { return q_; }
  const BigInt& p_prev() const { return p_prev_; }
  const BigInt& q_prev() const { return q_prev_; }
  Convergent current() const { return {index_, p_, q_}; }

 private:
  std::size_t index_ = 0;
  BigInt p_ = 0;
  BigInt q_ = 1;
  BigInt p_prev_ = 1;
  BigInt q_prev_ = 0;
};

// Euclidean algorithm; requires 0 < p < q after reduction. Result is
// canonical.
CFExpansion expand_rational(const BigInt& p, const BigInt& q);
CFExpansion expand_rational(const Rational& x);

// Exact value; accepts non-canonical input.
Rational evaluate(const CFExpansion& cf);

// Convergents 1..upto.
std::vector<Convergent> convergents(const CFExpansion& cf, std::size_t upto);

// theta_n = q_n |q_n x - p_n| = 1/(a'_{n+1} + q_{n-1}/q_n) with the tail
// a'_{n+1} bracketed by [a_{n+1}, a_{n+1} + 1]. Requires n + 1 <= size.
RationalInterval theta_bounds(const CFExpansion& cf, std::size_t n);
RationalInterval theta_bounds(const BigInt& a_next, const BigInt& q_prev,
                              const BigInt& q);

// |x - p_n/q_n| in [1/(q_n (q_{n+1} + q_n)), 1/(q_n q_{n+1})].
RationalInterval error_bounds(const CFExpansion& cf, std::size_t n);
RationalInterval error_bounds(const BigInt& q, const BigInt& q_next);

struct ForcedConvergent {
  bool legendre_holds = false;  // |x - p/q| < 1/(2 q^2)
  bool is_convergent = false;
};

// x in (0,1); p/q reduced with 0 < p/q < 1.
ForcedConvergent is_forced_convergent(const Rational& x, const BigInt& p,
                                      const BigInt& q);

}  // namespace cfgrowth::cf

#endif  // CFGROWTH_CF_CORE_HPP_
