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

#include "cfgrowth/dimension_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <string>

#include "cfgrowth/cf_core.hpp"
#include "cfgrowth/constructors.hpp"
#include "cfgrowth/error.hpp"
#include "cfgrowth/sampler.hpp"

namespace cfgrowth::dimlab {
namespace {

void finish(PointCloud& cloud) {
  std::sort(cloud.points.begin(), cloud.points.end());
  const auto last = std::unique(cloud.points.begin(), cloud.points.end());
  cloud.duplicates = static_cast<std::size_t>(cloud.points.end() - last);
  cloud.points.erase(last, cloud.points.end());
}

void check_count(std::size_t count) {
  if (count == 0 || count > kMaxCloudSize) {
    throw_domain("cloud size must be in 1.." + std::to_string(kMaxCloudSize));
  }
}

}  // namespace

PointCloud point_cloud(const Rational& z, std::size_t count, std::size_t depth,
                       std::uint64_t seed) {
  check_count(count);
  if (z < 0 || z >= 1) throw_domain("point_cloud: z must lie in [0,1)");
  PointCloud cloud;
  cloud.z = z;
  cloud.depth = depth;
  cloud.requested = count;
  cloud.certified_bits = std::numeric_limits<std::size_t>::max();
  cloud.points.reserve(count);

  construct::ConstructionPlan plan;
  plan.z = z;
  plan.jitter = true;
  plan.max_digits = depth;
  for (std::size_t i = 0; i < count; ++i) {
    plan.seed = sampler::derive_seed(seed, i);
    const cf::CFExpansion cf = construct::construct_f(plan);
    cf::ConvergentStepper s;
    for (const BigInt& a : cf.quotients()) s.advance(a);
    // The untruncated point lies in the cylinder of the prefix, whose length
    // is below 1/q_N^2.
    cloud.certified_bits = std::min(cloud.certified_bits, 2 * (bit_length(s.q()) - 1));
    Rational x(s.p(), s.q());
    cloud.points.push_back(std::move(x));
  }
  finish(cloud);
  return cloud;
}

PointCloud uniform_cloud(std::size_t count, std::size_t bits, std::uint64_t seed) {
  check_count(count);
  if (bits == 0 || bits > 64) throw_domain("uniform_cloud: bits must be in 1..64");
  PointCloud cloud;
  cloud.z = -1;
  cloud.depth = bits;
  cloud.requested = count;
  cloud.certified_bits = bits;
  std::mt19937_64 rng(seed);
  BigInt denom = 1;
  denom <<= static_cast<mp_bitcnt_t>(bits);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t m = rng();
    if (bits < 64) m >>= (64 - bits);
    if (m == 0) m = 1;
    Rational x(BigInt(static_cast<unsigned long>(m)), denom);
    x.canonicalize();
    cloud.points.push_back(std::move(x));
  }
  finish(cloud);
  return cloud;
}

std::vector<BoxCount> box_counts(const PointCloud& cloud,
                                 std::span<const unsigned> ks) {
  std::vector<BoxCount> out;
  out.reserve(ks.size());
  std::vector<BigInt> boxes;
  boxes.reserve(cloud.points.size());
  for (unsigned k : ks) {
    if (k > cloud.certified_bits) {
      throw_domain("scale 2^-" + std::to_string(k) + " is finer than the cloud's " +
                   std::to_string(cloud.certified_bits) + " certified bits");
    }
    boxes.clear();
    for (const Rational& x : cloud.points) {
      BigInt scaled = x.get_num();
      scaled <<= k;
      BigInt box;
      mpz_fdiv_q(box.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
      boxes.push_back(std::move(box));
    }
    std::sort(boxes.begin(), boxes.end());
    const auto last = std::unique(boxes.begin(), boxes.end());
    out.push_back({k, static_cast<std::size_t>(last - boxes.begin())});
  }
  return out;
}

SlopeFit slope_fit(std::span<const BoxCount> counts, unsigned k_lo, unsigned k_hi) {
  std::vector<double> xs;
  std::vector<double> ys;
  std::set<unsigned> distinct;
  for (const BoxCount& c : counts) {
    if (c.k < k_lo || c.k > k_hi) continue;
    if (c.count == 0) throw_domain("slope_fit: empty box count at k=" + std::to_string(c.k));
    xs.push_back(static_cast<double>(c.k));
    ys.push_back(std::log2(static_cast<double>(c.count)));
    distinct.insert(c.k);
  }
  if (distinct.size() < 4) {
    throw_domain("slope_fit needs at least 4 distinct scales in the window [" +
                 std::to_string(k_lo) + ", " + std::to_string(k_hi) + "]");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  SlopeFit fit;
  fit.k_lo = k_lo;
  fit.k_hi = k_hi;
  if (syy == 0.0) {
    fit.degenerate = true;
    fit.estimate = 0.0;
    fit.r_squared = 1.0;
    return fit;
  }
  fit.estimate = sxy / sxx;
  const double ss_res = syy - fit.estimate * sxy;
  fit.r_squared = 1.0 - std::max(0.0, ss_res) / syy;
  return fit;
}

}  // namespace cfgrowth::dimlab
