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

// Monte-Carlo checks of the almost-everywhere limits
//
//   log a_n / n -> 0,   -log|x - p_n/q_n| / n -> pi^2 / (6 log 2),
//   log a_{n+1} / log|x - p_n/q_n| -> 0,
//
// on uniformly random dyadic points whose quotient prefixes are certified
// for the whole dyadic cell around the sample.

#ifndef CFGROWTH_SAMPLER_HPP_
#define CFGROWTH_SAMPLER_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cfgrowth/cf_core.hpp"
#include "cfgrowth/numeric.hpp"

namespace cfgrowth::sampler {

// pi^2 / (6 ln 2)
inline constexpr double kLevyErrorRate = 2.373138220831251;

inline constexpr std::size_t kMinBits = 256;

struct SampleBudget {
  std::size_t bits = 2048;
  std::size_t n_target = 300;
  std::size_t guard_slack = 64;
};

struct Sample {
  std::uint64_t seed = 0;
  BigInt m;  // odd numerator, x = m / 2^bits before any warm-up shift
  Rational x;
  cf::CFExpansion prefix;
};

// Derives independent per-trial seeds (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                          std::uint64_t attempt = 0);

// Longest prefix shared by every real in [(m-1)/2^bits, (m+1)/2^bits], cut
// further so that 2*bitlen(q_n) + guard_slack <= bits.
cf::CFExpansion certified_prefix(const BigInt& m, std::size_t bits,
                                 std::size_t guard_slack);

// Uniform odd m in (0, 2^bits). With gauss_warmup the first quotient is
// discarded, i.e. x is replaced by its Gauss-map image 1/x - a_1.
Sample sample_x(std::uint64_t seed, const SampleBudget& budget,
                bool gauss_warmup = false);

struct TrialStats {
  double log_a_rate = 0.0;  // log a_n / n
  double error_rate = 0.0;  // -log|x - p_n/q_n| / n
  double r_ratio = 0.0;     // midpoint of the certified R_n interval
};

// Requires 1 <= n <= prefix.size() - 1.
TrialStats trial_stats(const Rational& x, const cf::CFExpansion& prefix,
                       std::size_t n);

struct Aggregate {
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;
  double ci95_lo = 0.0;
  double ci95_hi = 0.0;
};

Aggregate aggregate(std::vector<double> values);

struct MonteCarloResult {
  std::size_t trials = 0;
  std::size_t n = 0;
  SampleBudget budget;
  std::uint64_t master_seed = 0;
  bool gauss_warmup = false;
  std::size_t resampled = 0;
  Aggregate log_a_rate;
  Aggregate error_rate;
  Aggregate r_ratio;
  std::vector<std::uint64_t> trial_seeds;
  std::vector<TrialStats> per_trial;
};

inline constexpr std::size_t kMinTrials = 30;

// Trials whose certified prefix is shorter than n + 1 are redrawn with the
// next derived seed. Results depend only on the arguments, not on `threads`.
MonteCarloResult monte_carlo(std::size_t trials, std::size_t n,
                             const SampleBudget& budget,
                             std::uint64_t master_seed, unsigned threads = 1,
                             bool gauss_warmup = false);

}  // namespace cfgrowth::sampler

#endif  // CFGROWTH_SAMPLER_HPP_
