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

#include "cfgrowth/growth_stats.hpp"

#include <algorithm>
#include <string>

#include "cfgrowth/error.hpp"

namespace cfgrowth::growth {
namespace {

using cf::CFExpansion;
using cf::ConvergentStepper;

// -log|x - p_n/q_n|, enclosed; strictly positive for n >= 1.
RealInterval neg_log_error(const RationalInterval& error) {
  const RealInterval at_lo = log_enclosure(error.lo);
  const RealInterval at_hi = log_enclosure(error.hi);
  const RealInterval out{-at_hi.hi, -at_lo.lo};
  if (out.lo <= 0.0) throw_invariant("approximation error enclosure reaches 1");
  return out;
}

RealInterval r_from(const BigInt& a_next, const RealInterval& neg_log_err) {
  RealInterval r = divide(log_enclosure(a_next), neg_log_err);
  r.lo = std::max(r.lo, 0.0);
  return r;
}

RealInterval s_from(const BigInt& q, const RealInterval& neg_log_err) {
  const RealInterval log_q = log_enclosure(q);
  RealInterval s = divide({-2.0 * log_q.hi, -2.0 * log_q.lo}, neg_log_err);
  s.hi = std::min(s.hi, 0.0);
  return s;
}

LemmaGap gap_from(const BigInt& a_next, const BigInt& q,
                  const RationalInterval& theta, const RationalInterval& error) {
  LemmaGap gap;
  const Rational q_sq(q * q);
  gap.identity_holds = theta == error.scaled(q_sq);
  // |log(a theta)| <= log 3 over the whole interval; a*theta is monotone in
  // theta, so checking both endpoints suffices.
  const Rational third(1, 3);
  const Rational lo = a_next * theta.lo;
  const Rational hi = a_next * theta.hi;
  gap.gap_bound_holds = lo >= third && hi <= 3;
  return gap;
}

struct Window {
  BigInt q_prev;
  BigInt q;
  BigInt q_next;
};

void check_index(const CFExpansion& cf, std::size_t n) {
  if (n == 0) throw_domain("growth ratios are defined for n >= 1");
  if (n + 1 > cf.size()) {
    throw_domain("index n=" + std::to_string(n) + " needs a_" +
                 std::to_string(n + 1) + " but the expansion has " +
                 std::to_string(cf.size()) + " quotients");
  }
}

Window window_at(const CFExpansion& cf, std::size_t n) {
  ConvergentStepper s;
  for (std::size_t i = 1; i <= n; ++i) s.advance(cf.a(i));
  return {s.q_prev(), s.q(), cf.a(n + 1) * s.q() + s.q_prev()};
}

GrowthRecord make_record(std::size_t n, const BigInt& a_next,
                         const BigInt& q_prev, const BigInt& q,
                         const BigInt& q_next) {
  GrowthRecord rec;
  rec.n = n;
  rec.a_next = a_next;
  rec.q_bits = bit_length(q);
  rec.theta = cf::theta_bounds(a_next, q_prev, q);
  rec.error = cf::error_bounds(q, q_next);
  const RealInterval d = neg_log_error(rec.error);
  rec.r = r_from(a_next, d);
  rec.s = s_from(q, d);
  rec.gap = gap_from(a_next, q, rec.theta, rec.error);
  return rec;
}

}  // namespace

RealInterval r_ratio(const CFExpansion& cf, std::size_t n) {
  check_index(cf, n);
  const Window w = window_at(cf, n);
  return r_from(cf.a(n + 1), neg_log_error(cf::error_bounds(w.q, w.q_next)));
}

RealInterval s_ratio(const CFExpansion& cf, std::size_t n) {
  check_index(cf, n);
  const Window w = window_at(cf, n);
  return s_from(w.q, neg_log_error(cf::error_bounds(w.q, w.q_next)));
}

LemmaGap lemma_gap(const CFExpansion& cf, std::size_t n) {
  if (n + 1 > cf.size()) {
    throw_domain("lemma_gap: index n=" + std::to_string(n) + " needs a_" +
                 std::to_string(n + 1));
  }
  const Window w = window_at(cf, n);
  const BigInt& a_next = cf.a(n + 1);
  return gap_from(a_next, w.q, cf::theta_bounds(a_next, w.q_prev, w.q),
                  cf::error_bounds(w.q, w.q_next));
}

void for_each_record(const CFExpansion& cf,
                     const std::function<void(const GrowthRecord&)>& sink) {
  if (cf.size() < 2) throw_domain("trace needs at least two partial quotients");
  ConvergentStepper s;
  s.advance(cf.a(1));
  for (std::size_t n = 1; n < cf.size(); ++n) {
    const BigInt& a_next = cf.a(n + 1);
    const BigInt q_prev = s.q_prev();
    const BigInt q = s.q();
    s.advance(a_next);
    sink(make_record(n, a_next, q_prev, q, s.q()));
  }
}

GrowthTrace trace(const CFExpansion& cf) {
  GrowthTrace out;
  out.reserve(cf.size() > 0 ? cf.size() - 1 : 0);
  for_each_record(cf, [&](const GrowthRecord& rec) { out.push_back(rec); });
  return out;
}

std::size_t exceedance_count(const GrowthTrace& trace, const Rational& tau) {
  if (tau <= -1 || tau >= 0) throw_domain("exceedance_count: tau must lie in (-1, 0)");
  std::size_t count = 0;
  for (const GrowthRecord& rec : trace) {
    if (rec.n < kBurnIn) continue;
    if (Rational(rec.s.lo) > tau) ++count;
  }
  return count;
}

}  // namespace cfgrowth::growth
