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

#include "cfgrowth/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <string>
#include <mutex>
#include <thread>

#include "cfgrowth/error.hpp"
#include "cfgrowth/growth_stats.hpp"

namespace cfgrowth::sampler {
namespace {

constexpr std::size_t kMaxAttempts = 1000;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Canonical expansion of v/2^bits, empty when v is 0 or 2^bits.
std::vector<BigInt> dyadic_quotients(const BigInt& v, const BigInt& denom) {
  if (sgn(v) <= 0 || v >= denom) return {};
  const cf::CFExpansion cf = cf::expand_rational(v, denom);
  return {cf.quotients().begin(), cf.quotients().end()};
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                          std::uint64_t attempt) {
  return splitmix64(splitmix64(splitmix64(master) ^ index) ^ (attempt * 0x2545f4914f6cdd1dULL));
}

cf::CFExpansion certified_prefix(const BigInt& m, std::size_t bits,
                                 std::size_t guard_slack) {
  BigInt denom = 1;
  denom <<= static_cast<mp_bitcnt_t>(bits);
  const std::vector<BigInt> below = dyadic_quotients(m - 1, denom);
  const std::vector<BigInt> above = dyadic_quotients(m + 1, denom);

  // Cylinder sets are intervals: if both cell endpoints carry a prefix, so
  // does every real between them.
  std::vector<BigInt> common;
  cf::ConvergentStepper s;
  for (std::size_t i = 0; i < below.size() && i < above.size(); ++i) {
    if (below[i] != above[i]) break;
    s.advance(below[i]);
    if (2 * bit_length(s.q()) + guard_slack > bits) break;
    common.push_back(below[i]);
  }
  return cf::CFExpansion(std::move(common));
}

Sample sample_x(std::uint64_t seed, const SampleBudget& budget, bool gauss_warmup) {
  if (budget.bits < kMinBits) {
    throw_domain("sample bits=" + std::to_string(budget.bits) + " below minimum " +
                 std::to_string(kMinBits));
  }
  std::mt19937_64 rng(seed);
  Sample out;
  out.seed = seed;
  out.m = 0;
  for (std::size_t filled = 0; filled < budget.bits; filled += 64) {
    out.m <<= 64;
    const std::uint64_t word = rng();
    out.m += BigInt(static_cast<unsigned long>(word));
  }
  // Keep exactly `bits` bits, then force the numerator odd.
  BigInt mask = 1;
  mask <<= static_cast<mp_bitcnt_t>(budget.bits);
  mask -= 1;
  out.m &= mask;
  mpz_setbit(out.m.get_mpz_t(), 0);

  BigInt denom = 1;
  denom <<= static_cast<mp_bitcnt_t>(budget.bits);
  out.x = Rational(out.m, denom);
  out.x.canonicalize();
  out.prefix = certified_prefix(out.m, budget.bits, budget.guard_slack);
  if (out.prefix.empty()) {
    throw_budget("no certified partial quotient at bits=" + std::to_string(budget.bits));
  }
  if (gauss_warmup) {
    const BigInt& a1 = out.prefix.a(1);
    out.x = 1 / out.x - a1;
    if (out.prefix.size() < 2) {
      throw_budget("gauss warm-up left no certified partial quotient");
    }
    const auto q = out.prefix.quotients();
    out.prefix = cf::CFExpansion(std::vector<BigInt>(q.begin() + 1, q.end()));
  }
  return out;
}

TrialStats trial_stats(const Rational& x, const cf::CFExpansion& prefix,
                       std::size_t n) {
  if (n == 0 || n + 1 > prefix.size()) {
    throw_domain("trial_stats: n=" + std::to_string(n) +
                 " outside the certified range 1.." +
                 std::to_string(prefix.size() > 0 ? prefix.size() - 1 : 0));
  }
  cf::ConvergentStepper s;
  for (std::size_t i = 1; i <= n; ++i) s.advance(prefix.a(i));
  Rational error = x - Rational(s.p(), s.q());
  error = abs(error);
  if (sgn(error) == 0) throw_invariant("sample coincides with its convergent");

  const double dn = static_cast<double>(n);
  TrialStats t;
  t.log_a_rate = log_enclosure(prefix.a(n)).midpoint() / dn;
  t.error_rate = -log_enclosure(error).midpoint() / dn;
  t.r_ratio = growth::r_ratio(prefix, n).midpoint();
  return t;
}

Aggregate aggregate(std::vector<double> values) {
  Aggregate a;
  if (values.empty()) return a;
  const double count = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  a.mean = sum / count;
  double ss = 0.0;
  for (double v : values) ss += (v - a.mean) * (v - a.mean);
  a.stddev = values.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  a.median = values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  const double half = 1.96 * a.stddev / std::sqrt(count);
  a.ci95_lo = a.mean - half;
  a.ci95_hi = a.mean + half;
  return a;
}

MonteCarloResult monte_carlo(std::size_t trials, std::size_t n,
                             const SampleBudget& budget, std::uint64_t master_seed,
                             unsigned threads, bool gauss_warmup) {
  if (trials < kMinTrials) {
    throw_domain("monte_carlo needs at least " + std::to_string(kMinTrials) +
                 " trials, got " + std::to_string(trials));
  }
  if (n == 0) throw_domain("monte_carlo: n must be >= 1");

  MonteCarloResult res;
  res.trials = trials;
  res.n = n;
  res.budget = budget;
  res.budget.n_target = n;
  res.master_seed = master_seed;
  res.gauss_warmup = gauss_warmup;
  res.trial_seeds.assign(trials, 0);
  res.per_trial.assign(trials, {});
  std::vector<std::size_t> attempts(trials, 0);

  auto run_trial = [&](std::size_t i) {
    for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
      const std::uint64_t seed = derive_seed(master_seed, i, attempt);
      const Sample sample = sample_x(seed, budget, gauss_warmup);
      if (sample.prefix.size() < n + 1) continue;
      res.trial_seeds[i] = seed;
      res.per_trial[i] = trial_stats(sample.x, sample.prefix, n);
      attempts[i] = attempt;
      return;
    }
    throw_budget("bits=" + std::to_string(budget.bits) + " never certified " +
                 std::to_string(n + 1) + " quotients in " +
                 std::to_string(kMaxAttempts) + " draws");
  };

  threads = std::max(1u, threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < trials; ++i) run_trial(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < trials; i = next++) {
            try {
              run_trial(i);
            } catch (...) {
              std::lock_guard<std::mutex> lock(failure_mutex);
              if (!failure) failure = std::current_exception();
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<double> log_a;
  std::vector<double> err;
  std::vector<double> r;
  for (std::size_t i = 0; i < trials; ++i) {
    res.resampled += attempts[i];
    log_a.push_back(res.per_trial[i].log_a_rate);
    err.push_back(res.per_trial[i].error_rate);
    r.push_back(res.per_trial[i].r_ratio);
  }
  res.log_a_rate = aggregate(std::move(log_a));
  res.error_rate = aggregate(std::move(err));
  res.r_ratio = aggregate(std::move(r));
  return res;
}

}  // namespace cfgrowth::sampler
