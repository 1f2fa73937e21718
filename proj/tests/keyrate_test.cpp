// Copyright 2026 The hbepp-link Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hbepp/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"
#include "hbepp/errors.hpp"
#include "hbepp/fock_oracle.hpp"

namespace hbepp {
namespace {

constexpr double kPi = std::numbers::pi;

// Root of H2(e) = 1/2 on (0, 1/2).
double half_entropy_root() {
  double lo = 0.0;
  double hi = 0.5;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (binary_entropy(mid) < 0.5 ? lo : hi) = mid;
  }
  return lo;
}

TEST(BinaryEntropy, Values) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.5), 1.0, 1e-16);
  EXPECT_NEAR(binary_entropy(0.25), 0.81127812445913283, 1e-15);
  EXPECT_NEAR(binary_entropy(0.1), binary_entropy(0.9), 1e-15);
  EXPECT_THROW(binary_entropy(-0.01), DomainError);
  EXPECT_THROW(binary_entropy(1.01), DomainError);
}

TEST(SecureRate, ThresholdAndClamp) {
  const double e = half_entropy_root();
  EXPECT_NEAR(e, 0.110028, 1e-6);
  EXPECT_NEAR(secure_rate(e, 1.0), 0.0, 1e-12);
  EXPECT_GT(secure_rate(e - 1e-4, 1.0), 0.0);
  EXPECT_EQ(secure_rate(e + 1e-4, 1.0), 0.0);
  EXPECT_EQ(secure_rate(0.0, 0.3), 0.3);
}

TEST(KeyRate, ReferencePoint) {
  // Frozen with tests/oracles/fock_reference.py. Probabilities carry an
  // absolute rounding error near 1e-16, so the QBER is good to about 1e-12.
  const auto src = SourceParams::from_gain(0.3);
  const auto ch = ChannelParams::from_loss_db(1.6, 20.0, 6.25e-7);
  const KeyRateReport r = key_rate(src, ch);
  EXPECT_NEAR(r.qber, 0.054208519995543492405, 1e-12);
  EXPECT_NEAR(r.sifted_rate, 0.00073783272239591558169, 1e-15);
  EXPECT_NEAR(r.secure_rate, 0.00028921222724218491541, 1e-14);
  EXPECT_EQ(r.g_used, 0.3);
  EXPECT_NEAR(r.mu_used, 0.09 / 0.91, 1e-16);
}

TEST(KeyRate, SiftDefinitions) {
  const auto src = SourceParams::from_gain(0.4);
  const auto ch = ChannelParams::from_transmittance(0.5, 0.1, 1e-4);
  for (auto m : {PostprocessingModel::kSquash, PostprocessingModel::kDiscard}) {
    const SiftResult s = qber_and_sift(src, ch, m);
    const CoincidenceCounts& c = s.counts;
    EXPECT_DOUBLE_EQ(s.qber, (c.n_pp + c.n_mm) / c.total());
    EXPECT_DOUBLE_EQ(s.sifted_rate, 0.5 * c.total());
  }
}

TEST(KeyRate, DiagonalBasisHasSameErrorRate) {
  // The source state is invariant under a joint rotation, so the 45-degree
  // basis sees the same errors as the 0-degree basis. Checked on the oracle.
  const auto src = SourceParams::from_gain(0.35);
  const auto ch = ChannelParams::from_transmittance(0.6, 0.05, 1e-4);
  const auto z = squash_coincidences(fock::oracle_probabilities(src, ch, {0.0, 0.0}));
  const auto x = squash_coincidences(fock::oracle_probabilities(src, ch, {kPi / 4, kPi / 4}));
  const double qber_z = (z.n_pp + z.n_mm) / z.total();
  const double qber_x = (x.n_pp + x.n_mm) / x.total();
  EXPECT_NEAR(qber_x, qber_z, 1e-12);
  EXPECT_NEAR(qber_z, qber_and_sift(src, ch).qber, 1e-12);
}

TEST(KeyRate, OrthogonalAnalyzersWithOutcomeSwap) {
  // At a relative angle of pi/2 the roles of + and - swap on one side, so
  // opposite-sign outcomes become the errors.
  const auto src = SourceParams::from_gain(0.35);
  const auto ch = ChannelParams::from_transmittance(0.6, 0.05, 1e-4);
  const auto z = squash_coincidences(fock::oracle_probabilities(src, ch, {0.0, 0.0}));
  const auto o = squash_coincidences(fock::oracle_probabilities(src, ch, {kPi / 2, 0.0}));
  EXPECT_NEAR((o.n_pm + o.n_mp) / o.total(), (z.n_pp + z.n_mm) / z.total(), 1e-12);
}

TEST(KeyRate, SecureNeverExceedsSifted) {
  for (double g = 0.02; g < 0.95; g += 0.04) {
    for (double l2 : {0.0, 10.0, 30.0}) {
      const auto r = key_rate(SourceParams::from_gain(g), ChannelParams::from_loss_db(1.6, l2, 1e-5));
      EXPECT_LE(r.secure_rate, r.sifted_rate);
    }
  }
  EXPECT_EQ(secure_rate(0.0, 0.25), 0.25);
}

TEST(SecureRate, NonincreasingInErrorRate) {
  double previous = secure_rate(0.0, 1.0);
  for (double e = 0.001; e <= 0.5; e += 0.001) {
    const double r = secure_rate(e, 1.0);
    EXPECT_LE(r, previous);
    previous = r;
  }
}

TEST(Optimizer, FindsLocalMaximum) {
  const auto ch = ChannelParams::from_loss_db(1.6, 30.0, 6.25e-7);
  const OptimizationResult r = optimize_gain(ch);
  ASSERT_TRUE(r.g_opt.has_value());
  const double g = *r.g_opt;
  const auto rate = [&](double x) { return key_rate(SourceParams::from_gain(x), ch).secure_rate; };
  EXPECT_NEAR(r.secure_rate_at_opt, rate(g), 1e-18);
  EXPECT_GE(r.secure_rate_at_opt, rate(g - 1e-4));
  EXPECT_GE(r.secure_rate_at_opt, rate(g + 1e-4));
  EXPECT_NEAR(*r.mu_opt, g * g / (1 - g * g), 1e-15);
  EXPECT_LE(r.bracket_lo, g);
  EXPECT_GE(r.bracket_hi, g);
  // Beats every point of an independent coarse scan.
  for (double x = 0.01; x < 0.95; x += 0.01) EXPECT_GE(r.secure_rate_at_opt, rate(x));
}

TEST(Optimizer, NoPositiveRate) {
  const auto ch = ChannelParams::from_loss_db(1.6, 80.0, 1e-3);
  const OptimizationResult r = optimize_gain(ch);
  EXPECT_FALSE(r.g_opt.has_value());
  EXPECT_FALSE(r.mu_opt.has_value());
  EXPECT_EQ(r.secure_rate_at_opt, 0.0);
}

TEST(Optimizer, RejectsBadBounds) {
  const auto ch = ChannelParams::from_transmittance(0.5, 0.5);
  EXPECT_THROW(optimize_gain(ch, {0.0, 0.5}), DomainError);
  EXPECT_THROW(optimize_gain(ch, {0.5, 0.4}), DomainError);
  EXPECT_THROW(optimize_gain(ch, {0.1, 1.0}), DomainError);
}

TEST(Passive, RatioAtMostOneAndMinimumReported) {
  const auto base = ChannelParams::from_loss_db(1.6, 30.0, 6.25e-7);
  const std::vector<double> losses = {20.0, 25.0, 30.0, 35.0, 40.0};
  const PassiveSweep s = passive_performance(0.1, base, losses);
  ASSERT_EQ(s.points.size(), losses.size());
  double lowest = 2.0;
  for (std::size_t i = 0; i < losses.size(); ++i) {
    const PassivePoint& p = s.points[i];
    EXPECT_EQ(p.loss2_db, losses[i]);
    ASSERT_TRUE(p.ratio.has_value());
    EXPECT_LE(*p.ratio, 1.0 + 1e-12);
    EXPECT_GT(*p.ratio, 0.0);
    lowest = std::min(lowest, *p.ratio);
    const auto ch = ChannelParams::from_loss_db(1.6, losses[i], 6.25e-7);
    EXPECT_DOUBLE_EQ(p.secure_rate_fixed, key_rate(SourceParams::from_mean_photon(0.1), ch).secure_rate);
  }
  ASSERT_TRUE(s.min_ratio.has_value());
  EXPECT_EQ(*s.min_ratio, lowest);
}

}  // namespace
}  // namespace hbepp
