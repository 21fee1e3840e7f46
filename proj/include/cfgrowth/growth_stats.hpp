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

// Certified finite-prefix growth statistics.
//
//   R_n = -log a_{n+1} / log|x - p_n/q_n|   (limsup defines the F(z) sets)
//   S_n =  log q_n^2   / log|x - p_n/q_n|   (limsup defines the G(alpha) sets)
//
// Both are enclosed in RealIntervals that hold for every real x whose
// expansion starts with the given prefix.

#ifndef CFGROWTH_GROWTH_STATS_HPP_
#define CFGROWTH_GROWTH_STATS_HPP_

#include <cstddef>
#include <functional>
#include <vector>

#include "cfgrowth/cf_core.hpp"
#include "cfgrowth/numeric.hpp"

namespace cfgrowth::growth {

// Indices below this are ignored by membership-style counts.
inline constexpr std::size_t kBurnIn = 5;

struct LemmaGap {
  bool gap_bound_holds = false;  // |-log a_{n+1} - log theta| <= log 3
  bool identity_holds = false;   // theta interval == q_n^2 * error interval
};

struct GrowthRecord {
  std::size_t n = 0;
  BigInt a_next;
  std::size_t q_bits = 0;
  RationalInterval theta;
  RationalInterval error;
  RealInterval r;
  RealInterval s;
  LemmaGap gap;
};

using GrowthTrace = std::vector<GrowthRecord>;

RealInterval r_ratio(const cf::CFExpansion& cf, std::size_t n);
RealInterval s_ratio(const cf::CFExpansion& cf, std::size_t n);
LemmaGap lemma_gap(const cf::CFExpansion& cf, std::size_t n);

// Streams records for n = 1..size-1 without materializing the trace.
void for_each_record(const cf::CFExpansion& cf,
                     const std::function<void(const GrowthRecord&)>& sink);

GrowthTrace trace(const cf::CFExpansion& cf);

// Number of records with n >= kBurnIn whose certified S_n lower endpoint
// exceeds tau. tau must lie in (-1, 0).
std::size_t exceedance_count(const GrowthTrace& trace, const Rational& tau);

}  // namespace cfgrowth::growth

#endif  // CFGROWTH_GROWTH_STATS_HPP_
