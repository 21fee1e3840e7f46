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

#include <doctest.h>

#include <cmath>
#include <random>

#include "cfgrowth/error.hpp"
#include "cfgrowth/sampler.hpp"

namespace cfgrowth::sampler {
namespace {

bool is_prefix_of(const cf::CFExpansion& prefix, const cf::CFExpansion& full) {
  if (prefix.size() > full.size()) return false;
  for (std::size_t i = 1; i <= prefix.size(); ++i) {
    if (prefix.a(i) != full.a(i)) return false;
  }
  return true;
}

TEST_CASE("sample_x is reproducible and well formed") {
  SampleBudget budget;
  budget.bits = 512;
  const Sample a = sample_x(17, budget);
  const Sample b = sample_x(17, budget);
  CHECK(a.m == b.m);
  CHECK(a.prefix == b.prefix);
  CHECK(mpz_odd_p(a.m.get_mpz_t()));
  CHECK(bit_length(a.m) <= 512);
  CHECK(a.x > 0);
  CHECK(a.x < 1);
  CHECK_FALSE(sample_x(18, budget).m == a.m);
  budget.bits = 255;
  CHECK_THROWS_AS(sample_x(1, budget), Error);
}

TEST_CASE("certified prefix is shared by the whole dyadic cell") {
  SampleBudget budget;
  budget.bits = 384;
  std::mt19937_64 rng(2024);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Sample s = sample_x(seed, budget);
    REQUIRE(s.prefix.size() > 0);
    BigInt denom = 1;
    denom <<= 384;
    // Neighbouring numerators m +- 1.
    for (int delta : {-1, 1}) {
      const cf::CFExpansion full = cf::expand_rational(s.m + delta, denom);
      CHECK(is_prefix_of(s.prefix, full));
    }
    // Interior points of the cell at finer resolution.
    BigInt fine_denom = denom << 20;
    for (int i = 0; i < 20; ++i) {
      const long k = std::uniform_int_distribution<long>(-(1L << 20), 1L << 20)(rng);
      const BigInt num = (s.m << 20) + k;
      Rational y(num, fine_denom);
      y.canonicalize();
      CHECK(is_prefix_of(s.prefix, cf::expand_rational(y)));
    }
  }
}

TEST_CASE("guard slack bounds the certified length") {
  SampleBudget budget;
  budget.bits = 1024;
  const Sample s = sample_x(5, budget);
  cf::ConvergentStepper st;
  for (const BigInt& a : s.prefix.quotients()) st.advance(a);
  CHECK(2 * bit_length(st.q()) + budget.guard_slack <= budget.bits);

  // Cutting the guard to 0 never shortens the prefix.
  const cf::CFExpansion loose = certified_prefix(s.m, 1024, 0);
  CHECK(loose.size() >= s.prefix.size());
}

TEST_CASE("2048-bit samples certify at least 300 quotients") {
  SampleBudget budget;
  std::size_t long_enough = 0;
  constexpr std::size_t kSamples = 200;
  for (std::uint64_t i = 0; i < kSamples; ++i) {
    if (sample_x(derive_seed(1, i), budget).prefix.size() >= 300) ++long_enough;
  }
  CHECK(static_cast<double>(long_enough) >= 0.99 * kSamples);
}

TEST_CASE("gauss warm-up drops the first quotient") {
  SampleBudget budget;
  budget.bits = 512;
  const Sample plain = sample_x(9, budget);
  const Sample warm = sample_x(9, budget, true);
  REQUIRE(warm.prefix.size() + 1 == plain.prefix.size());
  for (std::size_t i = 1; i <= warm.prefix.size(); ++i) {
    CHECK(warm.prefix.a(i) == plain.prefix.a(i + 1));
  }
  CHECK(warm.x == 1 / plain.x - plain.prefix.a(1));
}

TEST_CASE("trial_stats ranges") {
  SampleBudget budget;
  const Sample s = sample_x(3, budget);
  const TrialStats t = trial_stats(s.x, s.prefix, 100);
  CHECK(t.error_rate > 0.0);
  CHECK(t.r_ratio >= 0.0);
  CHECK(t.r_ratio < 1.0);
  CHECK(t.log_a_rate >= 0.0);
  CHECK_THROWS_AS(trial_stats(s.x, s.prefix, 0), Error);
  CHECK_THROWS_AS(trial_stats(s.x, s.prefix, s.prefix.size()), Error);

  // x = 7/17 exactly: error at n = 2 is 1/85.
  const TrialStats exact = trial_stats(Rational(7, 17), cf::CFExpansion{2, 2, 3}, 2);
  CHECK(std::fabs(exact.error_rate - std::log(85.0) / 2.0) < 1e-12);
  CHECK(std::fabs(exact.log_a_rate - std::log(2.0) / 2.0) < 1e-12);

  // Bounded quotients: log a_n / n <= log 2 / n.
  const cf::CFExpansion bounded{1, 2, 1, 2, 1, 2, 1, 2};
  const TrialStats b = trial_stats(cf::evaluate(bounded), bounded, 6);
  CHECK(b.log_a_rate <= std::log(2.0) / 6.0 + 1e-12);
}

TEST_CASE("aggregate") {
  const Aggregate a = aggregate({1.0, 2.0, 3.0, 4.0});
  CHECK(a.mean == doctest::Approx(2.5));
  CHECK(a.median == doctest::Approx(2.5));
  CHECK(a.stddev == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(a.ci95_lo < a.mean);
  CHECK(a.ci95_hi > a.mean);
  CHECK(aggregate({5.0, 1.0, 3.0}).median == 3.0);
}

TEST_CASE("monte_carlo is deterministic across thread counts") {
  SampleBudget budget;
  budget.bits = 512;
  const MonteCarloResult one = monte_carlo(30, 60, budget, 77, 1);
  const MonteCarloResult three = monte_carlo(30, 60, budget, 77, 3);
  CHECK(one.trial_seeds == three.trial_seeds);
  CHECK(one.error_rate.mean == three.error_rate.mean);
  CHECK(one.r_ratio.median == three.r_ratio.median);
  CHECK(one.log_a_rate.stddev == three.log_a_rate.stddev);
  const MonteCarloResult other = monte_carlo(30, 60, budget, 78, 1);
  CHECK(other.error_rate.mean != one.error_rate.mean);

  CHECK_THROWS_AS(monte_carlo(29, 60, budget, 1), Error);
}

TEST_CASE("monte_carlo resamples short prefixes") {
  SampleBudget budget;
  budget.bits = 256;
  // n close to the typical certified length forces redraws.
  const MonteCarloResult r = monte_carlo(30, 56, budget, 5);
  CHECK(r.resampled > 0);
  for (std::uint64_t seed : r.trial_seeds) {
    CHECK(sample_x(seed, budget).prefix.size() >= 57);
  }
}

TEST_CASE("error-rate mean moves toward pi^2/(6 log 2) as n grows") {
  // Averaged over several master seeds to smooth out single-run noise.
  double previous_gap = 1e9;
  for (std::size_t n : {100, 200, 300}) {
    SampleBudget budget;
    budget.bits = 8 * n;
    double gap = 0.0;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      gap += std::fabs(monte_carlo(60, n, budget, seed).error_rate.mean - kLevyErrorRate);
    }
    CHECK(gap <= previous_gap * 1.05);
    previous_gap = gap;
  }
}

}  // namespace
}  // namespace cfgrowth::sampler
