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

#include "cfgrowth/jarnik.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "cfgrowth/error.hpp"

namespace cfgrowth::jarnik {
namespace {

constexpr std::uint64_t kBlockSize = std::uint64_t{1} << 16;

// Neumaier's variant of Kahan summation.
struct CompensatedSum {
  long double sum = 0.0L;
  long double carry = 0.0L;

  void add(long double v) {
    const long double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  long double value() const { return sum + carry; }
};

long double to_long_double(const Rational& v) {
  // Exact for dyadic values with small numerators such as -1 or 1/2.
  return static_cast<long double>(v.get_num().get_d()) /
         static_cast<long double>(v.get_den().get_d());
}

long double power_term(std::uint64_t r, long double exponent, int int_exponent,
                       bool is_int) {
  const auto x = static_cast<long double>(r);
  if (is_int) {
    switch (int_exponent) {
      case -1: return 1.0L / x;
      case 0: return 1.0L;
      case 1: return x;
      default: break;
    }
  }
  return std::pow(x, exponent);
}

}  // namespace

PsiSpec::PsiSpec(Rational tau, Rational eps) : tau_(std::move(tau)), eps_(std::move(eps)) {
  tau_.canonicalize();
  eps_.canonicalize();
  if (tau_ <= -1 || tau_ >= 0) {
    throw_domain("tau=" + to_string(tau_) + " must lie in (-1, 0)");
  }
  if (eps_ < 0 || eps_ >= -tau_) {
    throw_domain("eps=" + to_string(eps_) + " must satisfy 0 <= eps < |tau|");
  }
}

Rational PsiSpec::exponent() const {
  Rational e = 2 / shift();
  e.canonicalize();
  return e;
}

long double psi_value(const PsiSpec& spec, std::uint64_t r) {
  if (r == 0) throw_domain("psi_value: r must be >= 1");
  return std::pow(static_cast<long double>(r), to_long_double(spec.exponent()));
}

long double log_psi(const PsiSpec& spec, std::uint64_t r) {
  if (r == 0) throw_domain("log_psi: r must be >= 1");
  return to_long_double(spec.exponent()) * std::log(static_cast<long double>(r));
}

Rational critical_exponent(const PsiSpec& spec) {
  Rational s = -spec.shift();
  s.canonicalize();
  return s;
}

long double partial_sum(const PsiSpec& spec, const Rational& s, std::uint64_t n,
                        unsigned threads) {
  if (n > kMaxPartialSumTerms) {
    throw_domain("partial_sum: N=" + std::to_string(n) + " exceeds the limit of " +
                 std::to_string(kMaxPartialSumTerms) + " terms");
  }
  Rational exponent_q = 1 + 2 * s / spec.shift();
  exponent_q.canonicalize();
  const long double exponent = to_long_double(exponent_q);
  const bool is_int = exponent_q.get_den() == 1 && exponent_q.get_num().fits_sint_p();
  const int int_exponent = is_int ? static_cast<int>(exponent_q.get_num().get_si()) : 0;

  const std::uint64_t blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<long double> block_sums(blocks, 0.0L);
  auto run_block = [&](std::uint64_t b) {
    CompensatedSum acc;
    const std::uint64_t first = b * kBlockSize + 1;
    const std::uint64_t last = std::min(n, first + kBlockSize - 1);
    for (std::uint64_t r = first; r <= last; ++r) {
      acc.add(power_term(r, exponent, int_exponent, is_int));
    }
    block_sums[b] = acc.value();
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(
                                                         std::max<std::uint64_t>(blocks, 1))));
  if (threads == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::uint64_t b = t; b < blocks; b += threads) run_block(b);
      });
    }
  }

  CompensatedSum total;
  for (long double v : block_sums) total.add(v);
  const long double result = total.value();
  if (!std::isfinite(result)) {
    throw_budget("partial_sum overflowed at N=" + std::to_string(n));
  }
  return result;
}

JarnikVerdict measure_verdict(const PsiSpec& spec, const Rational& s,
                              std::vector<std::uint64_t> sample_points) {
  if (s < 0 || s >= 1) {
    throw_domain("s=" + to_string(s) + " must lie in [0, 1)");
  }
  JarnikVerdict v;
  v.s = s;
  v.s.canonicalize();
  // Boundary s = s* is the harmonic series: divergent, so infinite measure.
  v.classification = s <= critical_exponent(spec) ? Measure::infinity : Measure::zero;
  v.series_exponent = 1 + 2 * v.s / spec.shift();
  v.series_exponent.canonicalize();
  for (std::uint64_t n : sample_points) {
    v.partial_sums.emplace_back(n, partial_sum(spec, v.s, n));
  }
  return v;
}

BigInt legendre_threshold(const PsiSpec& spec) {
  // psi(r) < r^-2/2  <=>  r^c > 2 with c = -2/(tau+eps) - 2 > 0.
  Rational c = -spec.exponent() - 2;
  c.canonicalize();
  const BigInt& u = c.get_num();
  const BigInt& v = c.get_den();
  if (!u.fits_ulong_p() || !v.fits_ulong_p()) {
    throw_budget("legendre_threshold: exponent " + to_string(c) + " too large");
  }
  // Smallest r with r^u > 2^v is floor(2^(v/u)) + 1.
  BigInt two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, v.get_ui());
  BigInt root;
  mpz_root(root.get_mpz_t(), two_pow.get_mpz_t(), u.get_ui());
  return root + 1;
}

DimensionResult dim_f(const Rational& z) {
  if (z == 0) return {DimensionKind::full_measure, Rational(1), false};
  if (z > 0 && z <= 1) {
    Rational d = 1 - z;
    d.canonicalize();
    return {DimensionKind::value, d, true};
  }
  return {DimensionKind::empty, Rational(0), false};
}

DimensionResult dim_g(const Rational& alpha) {
  if (alpha == -1) return {DimensionKind::full_measure, Rational(1), false};
  if (alpha > -1 && alpha <= 0) {
    Rational d = -alpha;
    d.canonicalize();
    return {DimensionKind::value, d, true};
  }
  return {DimensionKind::empty, Rational(0), false};
}

}  // namespace cfgrowth::jarnik
