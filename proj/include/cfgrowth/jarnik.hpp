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

// Power-law approximation functions psi(r) = r^(2/(tau+eps)), the
// zero-infinity classification of the s-dimensional Hausdorff measure of the
// limsup set W(psi) through the series sum_r r psi(r)^s, and the closed-form
// dimensions of the F(z) and G(alpha) level sets.

#ifndef CFGROWTH_JARNIK_HPP_
#define CFGROWTH_JARNIK_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "cfgrowth/numeric.hpp"

namespace cfgrowth::jarnik {

class PsiSpec {
 public:
  // Requires tau in (-1, 0) and 0 <= eps < |tau|.
  PsiSpec(Rational tau, Rational eps);

  const Rational& tau() const { return tau_; }
  const Rational& eps() const { return eps_; }
  // tau + eps, always in (-1, 0).
  Rational shift() const { return tau_ + eps_; }
  // 2/(tau + eps), always < -2.
  Rational exponent() const;

 private:
  Rational tau_;
  Rational eps_;
};

enum class Measure { zero, infinity };

inline constexpr std::uint64_t kMaxPartialSumTerms = 100'000'000;

struct JarnikVerdict {
  Rational s;
  Measure classification = Measure::zero;
  Rational series_exponent;  // 1 + 2s/(tau+eps)
  std::vector<std::pair<std::uint64_t, long double>> partial_sums;
};

// r^(2/(tau+eps)) for r >= 1.
long double psi_value(const PsiSpec& spec, std::uint64_t r);
// ln psi(r), usable where psi itself underflows.
long double log_psi(const PsiSpec& spec, std::uint64_t r);

// Infinity iff s <= -(tau+eps). Fills partial sums at the given N values
// (default 10^3..10^6).
JarnikVerdict measure_verdict(const PsiSpec& spec, const Rational& s,
                              std::vector<std::uint64_t> sample_points = {
                                  1'000, 10'000, 100'000, 1'000'000});

Rational critical_exponent(const PsiSpec& spec);

// Compensated sum of r^(1 + 2s/(tau+eps)) for r = 1..n. Blocks of fixed size
// are summed independently and reduced in index order, so the result does not
// depend on the thread count.
long double partial_sum(const PsiSpec& spec, const Rational& s, std::uint64_t n,
                        unsigned threads = 1);

// Smallest r0 with psi(r) < r^-2 / 2 for all r >= r0.
BigInt legendre_threshold(const PsiSpec& spec);

enum class DimensionKind {
  value,         // closed-form Hausdorff dimension, infinite measure
  full_measure,  // Lebesgue-almost-every point; dimension 1
  empty,
};

struct DimensionResult {
  DimensionKind kind = DimensionKind::empty;
  Rational dimension;              // meaningful unless kind == empty
  bool measure_infinite = false;   // H^dimension = infinity
};

DimensionResult dim_f(const Rational& z);
DimensionResult dim_g(const Rational& alpha);

}  // namespace cfgrowth::jarnik

#endif  // CFGROWTH_JARNIK_HPP_
