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

#include "cfgrowth/cf_core.hpp"

#include <string>
#include <utility>

#include "cfgrowth/error.hpp"

namespace cfgrowth::cf {

CFExpansion::CFExpansion(std::vector<BigInt> quotients)
    : quotients_(std::move(quotients)) {
  for (std::size_t i = 0; i < quotients_.size(); ++i) {
    if (quotients_[i] < 1) {
      throw_domain("partial quotient a_" + std::to_string(i + 1) +
                   " must be a positive integer");
    }
  }
}

CFExpansion::CFExpansion(std::initializer_list<long> quotients)
    : CFExpansion(std::vector<BigInt>(quotients.begin(), quotients.end())) {}

const BigInt& CFExpansion::a(std::size_t n) const {
  if (n == 0 || n > quotients_.size()) {
    throw_domain("quotient index " + std::to_string(n) + " out of range 1.." +
                 std::to_string(quotients_.size()));
  }
  return quotients_[n - 1];
}

bool CFExpansion::canonical() const {
  return quotients_.size() < 2 || quotients_.back() >= 2;
}

CFExpansion CFExpansion::prefix(std::size_t len) const {
  if (len > quotients_.size()) throw_domain("prefix longer than expansion");
  return CFExpansion(std::vector<BigInt>(quotients_.begin(),
                                         quotients_.begin() + static_cast<std::ptrdiff_t>(len)));
}

void ConvergentStepper::advance(const BigInt& a) {
  BigInt p_next = a * p_ + p_prev_;
  BigInt q_next = a * q_ + q_prev_;
  p_prev_ = std::move(p_);
  q_prev_ = std::move(q_);
  p_ = std::move(p_next);
  q_ = std::move(q_next);
  ++index_;
}

CFExpansion expand_rational(const BigInt& p, const BigInt& q) {
  if (sgn(p) <= 0 || sgn(q) <= 0 || p >= q) {
    throw_domain("expand_rational: need 0 < p < q, got " + p.get_str() + "/" +
                 q.get_str());
  }
  std::vector<BigInt> quotients;
  // Reduction by gcd is implicit: Euclid on (q, p) yields the same quotients.
  BigInt num = q;
  BigInt den = p;
  BigInt quot;
  BigInt rem;
  while (sgn(den) != 0) {
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    quotients.push_back(quot);
    num.swap(den);
    den.swap(rem);
  }
  return CFExpansion(std::move(quotients));
}

CFExpansion expand_rational(const Rational& x) {
  return expand_rational(BigInt(x.get_num()), BigInt(x.get_den()));
}

Rational evaluate(const CFExpansion& cf) {
  if (cf.empty()) throw_domain("evaluate: empty quotient sequence");
  ConvergentStepper s;
  for (const BigInt& a : cf.quotients()) s.advance(a);
  return Rational(s.p(), s.q());  // coprime by the determinant identity
}

std::vector<Convergent> convergents(const CFExpansion& cf, std::size_t upto) {
  if (upto > cf.size()) {
    throw_domain("convergents: upto=" + std::to_string(upto) +
                 " exceeds expansion length " + std::to_string(cf.size()));
  }
  std::vector<Convergent> out;
  out.reserve(upto);
  ConvergentStepper s;
  for (std::size_t n = 1; n <= upto; ++n) {
    s.advance(cf.a(n));
    out.push_back(s.current());
  }
  return out;
}

namespace {

void require_next_quotient(const CFExpansion& cf, std::size_t n) {
  if (n + 1 > cf.size()) {
    throw_domain("index n=" + std::to_string(n) + " needs quotient a_" +
                 std::to_string(n + 1) + " but the expansion has " +
                 std::to_string(cf.size()));
  }
}

// (q_{n-1}, q_n, q_{n+1}) for the given n.
struct Window {
  BigInt q_prev;
  BigInt q;
  BigInt q_next;
};

Window window_at(const CFExpansion& cf, std::size_t n) {
  ConvergentStepper s;
  for (std::size_t i = 1; i <= n; ++i) s.advance(cf.a(i));
  Window w{s.q_prev(), s.q(), 0};
  w.q_next = cf.a(n + 1) * s.q() + s.q_prev();
  return w;
}

}  // namespace

RationalInterval theta_bounds(const BigInt& a_next, const BigInt& q_prev,
                              const BigInt& q) {
  Rational ratio(q_prev, q);
  ratio.canonicalize();
  const Rational smallest_tail = Rational(a_next) + ratio;
  const Rational largest_tail = smallest_tail + 1;
  return {1 / largest_tail, 1 / smallest_tail};
}

RationalInterval theta_bounds(const CFExpansion& cf, std::size_t n) {
  require_next_quotient(cf, n);
  const Window w = window_at(cf, n);
  return theta_bounds(cf.a(n + 1), w.q_prev, w.q);
}

RationalInterval error_bounds(const BigInt& q, const BigInt& q_next) {
  Rational lo(BigInt(1), q * (q_next + q));
  Rational hi(BigInt(1), q * q_next);
  return {std::move(lo), std::move(hi)};
}

RationalInterval error_bounds(const CFExpansion& cf, std::size_t n) {
  require_next_quotient(cf, n);
  const Window w = window_at(cf, n);
  return error_bounds(w.q, w.q_next);
}

ForcedConvergent is_forced_convergent(const Rational& x_in, const BigInt& p,
                                      const BigInt& q) {
  Rational x = x_in;
  x.canonicalize();
  if (sgn(q) <= 0) throw_domain("is_forced_convergent: q must be positive");
  BigInt g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  if (g != 1) {
    throw_domain("is_forced_convergent: " + p.get_str() + "/" + q.get_str() +
                 " is not reduced");
  }
  if (sgn(p) <= 0 || p >= q) throw_domain("is_forced_convergent: need 0 < p/q < 1");
  if (sgn(x) <= 0 || x >= 1) throw_domain("is_forced_convergent: need x in (0,1)");

  ForcedConvergent out;
  // |x - p/q| < 1/(2q^2)  <=>  2 q |x_num q - p x_den| < x_den
  BigInt diff = x.get_num() * q - p * x.get_den();
  diff = abs(diff);
  out.legendre_holds = 2 * q * diff < x.get_den();

  const CFExpansion cf = expand_rational(x);
  ConvergentStepper s;
  for (const BigInt& a : cf.quotients()) {
    s.advance(a);
    if (s.q() > q) break;
    if (s.q() == q && s.p() == p) {
      out.is_convergent = true;
      break;
    }
  }
  return out;
}

}  // namespace cfgrowth::cf
