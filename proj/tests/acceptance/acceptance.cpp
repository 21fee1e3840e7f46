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

// Acceptance gate. Each criterion prints one [PASS]/[FAIL] line; the exit
// status is nonzero when any selected criterion fails.
//
//   acceptance                 run all criteria
//   acceptance --criterion 4   run one

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cfgrowth/cf_core.hpp"
#include "cfgrowth/constructors.hpp"
#include "cfgrowth/dimension_lab.hpp"
#include "cfgrowth/growth_stats.hpp"
#include "cfgrowth/jarnik.hpp"
#include "cfgrowth/numeric.hpp"
#include "cfgrowth/sampler.hpp"
#include "test_util.hpp"

namespace {

using namespace cfgrowth;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Shared by criteria 1 and 2.
std::vector<cf::CFExpansion> random_corpus() {
  std::mt19937_64 rng(20260101);
  std::vector<cf::CFExpansion> corpus;
  corpus.reserve(1000);
  for (int i = 0; i < 1000; ++i) {
    corpus.push_back(testing::random_expansion(rng, 200, 1'000'000));
  }
  return corpus;
}

Verdict c1_exact_invariants() {
  const auto start = Clock::now();
  const auto corpus = random_corpus();
  std::size_t failures = 0, checks = 0;
  for (const auto& cf : corpus) {
    const auto conv = cf::convergents(cf, cf.size());
    BigInt p_prev = 0, q_prev = 1, g;  // index 0
    for (const auto& c : conv) {
      const BigInt det = c.q * p_prev - c.p * q_prev;
      const int sign = c.index % 2 == 0 ? 1 : -1;
      if (det != sign) ++failures;
      mpz_gcd(g.get_mpz_t(), c.p.get_mpz_t(), c.q.get_mpz_t());
      if (g != 1) ++failures;
      p_prev = c.p;
      q_prev = c.q;
      checks += 2;
    }
    const Rational x = cf::evaluate(cf);
    if (x != testing::fold_value(cf)) ++failures;
    if (cf::expand_rational(x) != cf) ++failures;
    checks += 2;
  }
  const double secs = seconds_since(start);
  return {failures == 0 && secs < 30.0,
          fmt("%zu expansions, %zu checks, %zu failures, %.2f s (limit 30 s)",
              corpus.size(), checks, failures, secs)};
}

Verdict c2_theta_identity_and_gap() {
  const auto corpus = random_corpus();
  std::size_t failures = 0, indices = 0;
  for (const auto& cf : corpus) {
    const Rational x = cf::evaluate(cf);
    const auto conv = cf::convergents(cf, cf.size());
    for (std::size_t n = 1; n < cf.size(); ++n) {
      const auto& c = conv[n - 1];
      const auto theta = cf::theta_bounds(cf, n);
      const auto err = cf::error_bounds(cf, n);
      const Rational q2(c.q * c.q);
      if (!(theta == err.scaled(q2))) ++failures;

      const Rational true_theta = q2 * abs(x - Rational(c.p, c.q));
      if (!theta.contains(true_theta)) ++failures;

      // |log a + log theta| <= log 3  <=>  1/3 <= a theta <= 3.
      const Rational a(cf.a(n + 1));
      const Rational third(1, 3);
      if (a * true_theta < third || a * true_theta > 3) ++failures;
      if (a * theta.lo < third || a * theta.hi > 3) ++failures;
      const auto gap = growth::lemma_gap(cf, n);
      if (!gap.gap_bound_holds || !gap.identity_holds) ++failures;
      ++indices;
    }
  }
  return {failures == 0, fmt("%zu indices over %zu expansions, %zu failures", indices,
                             corpus.size(), failures)};
}

// Convergent denominators/numerators of a/b by machine-word Euclid.
std::vector<std::pair<long, long>> word_convergents(long a, long b) {
  std::vector<std::pair<long, long>> out;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  long num = a, den = b;
  while (num != 0) {
    const long k = den / num;
    const long r = den % num;
    const long p = k * p0 + p1, q = k * q0 + q1;
    out.emplace_back(p, q);
    p1 = p0; q1 = q0; p0 = p; q0 = q;
    den = num;
    num = r;
  }
  return out;
}

Verdict c3_legendre_sweep() {
  constexpr long kMax = 120;
  const auto start = Clock::now();
  std::size_t pairs = 0, premises = 0, counterexamples = 0, disagreements = 0;
  for (long b = 2; b <= kMax; ++b) {
    for (long a = 1; a < b; ++a) {
      if (std::gcd(a, b) != 1) continue;
      const Rational x(a, b);
      const auto conv = word_convergents(a, b);
      for (long q = 2; q <= kMax; ++q) {
        for (long p = 1; p < q; ++p) {
          if (std::gcd(p, q) != 1) continue;
          ++pairs;
          const auto r = cf::is_forced_convergent(x, BigInt(p), BigInt(q));
          // 2 q |a q - p b| < b
          const bool legendre = 2 * q * std::labs(a * q - p * b) < b;
          bool member = false;
          for (const auto& [cp, cq] : conv) member = member || (cp == p && cq == q);
          if (r.legendre_holds != legendre || r.is_convergent != member) ++disagreements;
          if (legendre) {
            ++premises;
            if (!member) ++counterexamples;
          }
        }
      }
    }
  }
  const double secs = seconds_since(start);
  return {counterexamples == 0 && disagreements == 0 && secs < 60.0,
          fmt("%zu pairs, %zu satisfy the premise, %zu counterexamples, %zu oracle "
              "disagreements, %.1f s (limit 60 s)",
              pairs, premises, counterexamples, disagreements, secs)};
}

Verdict c4_constructor_convergence() {
  bool pass = true;
  std::string detail;
  for (const char* zs : {"1/5", "1/2", "4/5"}) {
    const auto start = Clock::now();
    const Rational z = parse_rational(zs);
    construct::ConstructionPlan plan;
    plan.z = z;
    plan.max_digits = 100'000;
    const auto cf = construct::construct_f(plan);
    const std::size_t n = cf.size() - 1;
    const auto q = cf::convergents(cf, n).back().q;
    const std::size_t digits = decimal_digits(q);
    const double zd = z.get_d();
    const auto r = growth::r_ratio(cf, n);
    const auto s = growth::s_ratio(cf, n);
    const double secs = seconds_since(start);
    const bool ok = digits >= 1000 && digits <= 100'000 && r.max_distance(zd) <= 1e-3 &&
                    s.max_distance(zd - 1) <= 1e-3 && secs < 60.0;
    pass = pass && ok;
    detail += fmt("%sz=%s: n=%zu digits=%zu R=[%.6f,%.6f] S=[%.6f,%.6f] %.1fs",
                  detail.empty() ? "" : "; ", zs, n, digits, r.lo, r.hi, s.lo, s.hi, secs);
  }
  return {pass, detail};
}

Verdict c5_f_one_witness() {
  const auto cf = construct::construct_f_one(8);
  const auto trace = growth::trace(cf);
  bool increasing = true;
  std::string seq;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i > 0 && !(trace[i - 1].r.hi < trace[i].r.lo)) increasing = false;
    seq += fmt("%s%.4f", i ? "," : "", trace[i].r.lo);
  }
  const double final_lo = trace.back().r.lo;
  return {increasing && final_lo > 0.9,
          fmt("R_n lower bounds n=1..%zu: %s; strictly increasing=%s; final lower bound "
              "%.6f (needs > 0.9)",
              trace.size(), seq.c_str(), increasing ? "yes" : "no", final_lo)};
}

Verdict c6_inclusion() {
  construct::ConstructionPlan plan;
  plan.max_digits = 100'000;
  const auto cf = construct::construct_g(Rational(-1, 2), plan);
  const auto trace = growth::trace(cf);
  const std::size_t len = cf.size();
  const std::size_t below = growth::exceedance_count(trace, Rational(-3, 5));
  const std::size_t above = growth::exceedance_count(trace, Rational(-2, 5));
  return {below + 5 >= len && above == 0,
          fmt("prefix length %zu: exceedance(-0.6)=%zu (needs >= %zu), "
              "exceedance(-0.4)=%zu (needs 0)",
              len, below, len - 5, above)};
}

Verdict c7_jarnik() {
  const jarnik::PsiSpec half(Rational(-1, 2), Rational(0));
  const auto v4 = jarnik::measure_verdict(half, Rational(2, 5)).classification;
  const auto v5 = jarnik::measure_verdict(half, Rational(1, 2)).classification;
  const auto v6 = jarnik::measure_verdict(half, Rational(3, 5)).classification;
  const bool verdicts = v4 == jarnik::Measure::infinity &&
                        v5 == jarnik::Measure::infinity && v6 == jarnik::Measure::zero;

  std::mt19937_64 rng(7);
  std::size_t mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const long den = std::uniform_int_distribution<long>(2, 1000)(rng);
    const long num = std::uniform_int_distribution<long>(1, den - 1)(rng);
    const Rational tau = -testing::reduced(num, den);
    const long eden = std::uniform_int_distribution<long>(1, 1000)(rng);
    // eps = |tau| * k/eden with k < eden keeps eps < |tau|.
    const long k = std::uniform_int_distribution<long>(0, eden - 1)(rng);
    const Rational eps = -tau * testing::reduced(k, eden);
    const jarnik::PsiSpec spec(tau, eps);
    if (jarnik::critical_exponent(spec) != -(tau + eps)) ++mismatches;
    // Coherence at the threshold itself: closed on the infinity side.
    const Rational s = jarnik::critical_exponent(spec);
    if (s < 1 &&
        jarnik::measure_verdict(spec, s, {1000}).classification != jarnik::Measure::infinity) {
      ++mismatches;
    }
  }

  // Exact H_N as the oracle.
  constexpr std::uint64_t kN = 10'000;
  Rational harmonic = 0;
  for (std::uint64_t r = 1; r <= kN; ++r) harmonic += Rational(1, r);
  const double h = harmonic.get_d();
  const double sum = static_cast<double>(
      jarnik::partial_sum(half, jarnik::critical_exponent(half), kN));
  const double rel = std::fabs(sum - h) / h;

  return {verdicts && mismatches == 0 && rel <= 1e-6,
          fmt("verdicts s=0.4,0.5,0.6: %s,%s,%s; critical exponent mismatches %zu/100; "
              "partial_sum(1e4)=%.12f vs H=%.12f (rel %.2e)",
              v4 == jarnik::Measure::infinity ? "inf" : "zero",
              v5 == jarnik::Measure::infinity ? "inf" : "zero",
              v6 == jarnik::Measure::infinity ? "inf" : "zero", mismatches, sum, h, rel)};
}

Verdict c8_dimension_formulas() {
  std::mt19937_64 rng(8);
  std::size_t mismatches = 0;
  std::vector<Rational> zs{Rational(0), Rational(1)};
  while (zs.size() < 1000) {
    const long den = std::uniform_int_distribution<long>(1, 10'000)(rng);
    const long num = std::uniform_int_distribution<long>(0, den)(rng);
    zs.push_back(testing::reduced(num, den));
  }
  for (const auto& z : zs) {
    const auto f = jarnik::dim_f(z);
    const auto g = jarnik::dim_g(z - 1);
    if (f.kind != g.kind || f.dimension != g.dimension ||
        f.measure_infinite != g.measure_infinite) {
      ++mismatches;
    }
  }
  const auto f03 = jarnik::dim_f(testing::reduced(3, 10));
  const auto g03 = jarnik::dim_g(testing::reduced(-3, 10));
  const bool spots = f03.kind == jarnik::DimensionKind::value &&
                     f03.dimension == testing::reduced(7, 10) && f03.measure_infinite &&
                     g03.kind == jarnik::DimensionKind::value &&
                     g03.dimension == testing::reduced(3, 10) && g03.measure_infinite &&
                     jarnik::dim_f(testing::reduced(3, 2)).kind ==
                         jarnik::DimensionKind::empty &&
                     jarnik::dim_g(testing::reduced(1, 5)).kind == jarnik::DimensionKind::empty;
  return {mismatches == 0 && spots,
          fmt("%zu z values, %zu shift mismatches; spot values %s", zs.size(), mismatches,
              spots ? "ok" : "wrong")};
}

Verdict c9_monte_carlo() {
  const auto start = Clock::now();
  sampler::SampleBudget budget;
  budget.bits = 2048;
  budget.n_target = 300;
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  const auto a = sampler::monte_carlo(200, 300, budget, 7, threads);
  const double secs = seconds_since(start);
  // Rerun on a different thread count: aggregation must not depend on scheduling.
  const auto b = sampler::monte_carlo(200, 300, budget, 7, threads > 1 ? 1 : 2);
  bool same = a.trial_seeds == b.trial_seeds && a.error_rate.mean == b.error_rate.mean &&
              a.log_a_rate.mean == b.log_a_rate.mean && a.r_ratio.mean == b.r_ratio.mean;
  for (std::size_t i = 0; same && i < a.per_trial.size(); ++i) {
    same = a.per_trial[i].error_rate == b.per_trial[i].error_rate;
  }
  const double target = sampler::kLevyErrorRate;
  const double rel = std::fabs(a.error_rate.mean - target) / target;
  return {rel <= 0.02 && a.log_a_rate.mean < 0.05 && a.r_ratio.mean < 0.05 && same &&
              secs < 600.0,
          fmt("error-rate mean %.5f (target %.5f, rel %.3f%%), log a_n/n mean %.5f, "
              "R_n mean %.5f, deterministic=%s, %.1f s on %u threads",
              a.error_rate.mean, target, 100 * rel, a.log_a_rate.mean, a.r_ratio.mean,
              same ? "yes" : "no", secs, threads)};
}

Verdict c10_dimension_lab() {
  const std::vector<unsigned> ks{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const auto uniform = dimlab::uniform_cloud(10'000, 64, 10);
  const auto fit = dimlab::slope_fit(dimlab::box_counts(uniform, ks), 4, 10);

  const auto low = dimlab::point_cloud(testing::reduced(1, 5), 10'000, 1000, 10);
  const auto high = dimlab::point_cloud(testing::reduced(4, 5), 10'000, 1000, 10);
  const auto cl = dimlab::box_counts(low, ks);
  const auto ch = dimlab::box_counts(high, ks);
  std::size_t violations = 0;
  std::string pairs;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (cl[i].count < ch[i].count) ++violations;
    pairs += fmt("%s%zu>=%zu", i ? "," : "", cl[i].count, ch[i].count);
  }
  const bool ok = fit.estimate >= 0.9 && fit.estimate <= 1.0 && violations == 0;
  return {ok, fmt("uniform slope %.4f (r2 %.4f) over k=4..10; counts z=0.2 vs z=0.8 at "
                  "k=1..10: %s; %zu ordering violations",
                  fit.estimate, fit.r_squared, pairs.c_str(), violations)};
}

struct Criterion {
  const char* name;
  std::function<Verdict()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"exact convergent invariants", c1_exact_invariants},
      {"theta identity and gap", c2_theta_identity_and_gap},
      {"Legendre sweep", c3_legendre_sweep},
      {"constructor convergence", c4_constructor_convergence},
      {"z = 1 witness", c5_f_one_witness},
      {"inclusion via exceedance", c6_inclusion},
      {"Jarnik classifier", c7_jarnik},
      {"dimension formulas", c8_dimension_formulas},
      {"Monte Carlo limits", c9_monte_carlo},
      {"dimension-lab sanity", c10_dimension_lab},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-10)")
      ->check(CLI::Range(1, static_cast<int>(criteria().size())));
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  for (std::size_t i = 0; i < criteria().size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    Verdict v;
    try {
      v = criteria()[i].run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    std::printf("[%s] C%zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria()[i].name,
                v.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && v.pass;
  }
  return all_pass ? 0 : 1;
}
