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

// Exploratory box-counting on point families drawn from the constructors.
// The estimate describes the sampled sub-family only; it is not a Hausdorff
// dimension and is reported without a target value.

#ifndef CFGROWTH_DIMENSION_LAB_HPP_
#define CFGROWTH_DIMENSION_LAB_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cfgrowth/numeric.hpp"

namespace cfgrowth::dimlab {

inline constexpr std::size_t kMaxCloudSize = 100'000;
inline constexpr unsigned kDefaultWindowLo = 4;
inline constexpr unsigned kDefaultWindowHi = 10;
inline constexpr std::string_view kCaveat =
    "box-counting slope of a finite sample of the constructed family; "
    "not an estimate of the Hausdorff dimension of F(z)";

struct PointCloud {
  std::vector<Rational> points;  // distinct, sorted, all in (0,1)
  Rational z;                    // target; -1 marks a uniform reference cloud
  std::size_t depth = 0;         // digit budget (or bits for uniform clouds)
  std::size_t requested = 0;
  std::size_t duplicates = 0;    // collapsed draws
  // Every point is within 2^-certified_bits of the real it truncates.
  std::size_t certified_bits = 0;
};

// `count` jittered every-step constructions for z in [0,1), truncated at
// `depth` digits of q_n. Point i uses the seed derived from (seed, i).
PointCloud point_cloud(const Rational& z, std::size_t count, std::size_t depth,
                       std::uint64_t seed);

// Uniform dyadic points m/2^bits, for calibration.
PointCloud uniform_cloud(std::size_t count, std::size_t bits, std::uint64_t seed);

struct BoxCount {
  unsigned k = 0;  // box width 2^-k
  std::size_t count = 0;
};

// Occupied boxes floor(x 2^k), decided in exact arithmetic. Requires
// k <= cloud.certified_bits.
std::vector<BoxCount> box_counts(const PointCloud& cloud,
                                 std::span<const unsigned> ks);

struct SlopeFit {
  double estimate = 0.0;
  double r_squared = 0.0;
  unsigned k_lo = 0;
  unsigned k_hi = 0;
  bool degenerate = false;  // constant counts: estimate 0
};

// Least-squares slope of log2(count) against k over k_lo <= k <= k_hi.
// Needs at least four distinct scales in the window.
SlopeFit slope_fit(std::span<const BoxCount> counts,
                   unsigned k_lo = kDefaultWindowLo,
                   unsigned k_hi = kDefaultWindowHi);

}  // namespace cfgrowth::dimlab

#endif  // CFGROWTH_DIMENSION_LAB_HPP_
