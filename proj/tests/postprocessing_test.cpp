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

#include "hbepp/postprocessing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "hbepp/analytic.hpp"

namespace hbepp {
namespace {

constexpr double kPi = std::numbers::pi;

ProbabilityTable ramp_table() {
  ProbabilityTable t;
  for (std::size_t i = 0; i < kNumPatterns; ++i) t.at(i) = static_cast<double>(i + 1);
  return t;
}

double entry(const ProbabilityTable& t, const char* bits) {
  return t[ClickPattern{bits[0] == '1', bits[1] == '1', bits[2] == '1', bits[3] == '1'}];
}

TEST(Postprocessing, ModelNames) {
  for (auto m : {PostprocessingModel::kSquash, PostprocessingModel::kDiscard}) {
    EXPECT_EQ(parse_model(to_string(m)), m);
  }
  EXPECT_FALSE(parse_model("keep").has_value());
}

TEST(Postprocessing, SquashSplitsMultiClicks) {
  const ProbabilityTable t = ramp_table();
  const CoincidenceCounts c = squash_coincidences(t);
  EXPECT_EQ(c.n_pp, entry(t, "1010") + 0.5 * entry(t, "1110") + 0.5 * entry(t, "1011") +
                        0.25 * entry(t, "1111"));
  EXPECT_EQ(c.n_pm, entry(t, "1001") + 0.5 * entry(t, "1101") + 0.5 * entry(t, "1011") +
                        0.25 * entry(t, "1111"));
  EXPECT_EQ(c.n_mp, entry(t, "0110") + 0.5 * entry(t, "1110") + 0.5 * entry(t, "0111") +
                        0.25 * entry(t, "1111"));
  EXPECT_EQ(c.n_mm, entry(t, "0101") + 0.5 * entry(t, "1101") + 0.5 * entry(t, "0111") +
                        0.25 * entry(t, "1111"));
}

TEST(Postprocessing, DiscardKeepsTwoFoldOnly) {
  const ProbabilityTable t = ramp_table();
  const CoincidenceCounts c = discard_coincidences(t);
  EXPECT_EQ(c.n_pp, entry(t, "1010"));
  EXPECT_EQ(c.n_pm, entry(t, "1001"));
  EXPECT_EQ(c.n_mp, entry(t, "0110"));
  EXPECT_EQ(c.n_mm, entry(t, "0101"));
}

TEST(Postprocessing, AsymmetricArmsCoincidences) {
  const auto t = outcome_probabilities(SourceParams::from_gain(0.6),
                                       ChannelParams::from_transmittance(0.7, 0.3), {});
  const CoincidenceCounts sq = squash_coincidences(t);
  EXPECT_NEAR(sq.n_pp, 0.018893807786733128, 1e-15);
  EXPECT_NEAR(sq.n_mm, 0.018893807786733128, 1e-15);
  EXPECT_NEAR(sq.n_pm, 0.097340634498969238, 1e-15);
  EXPECT_NEAR(sq.n_mp, 0.097340634498969238, 1e-15);
  const CoincidenceCounts di = discard_coincidences(t);
  EXPECT_NEAR(di.n_pp, 0.0041059836257516572377, 1e-15);
  EXPECT_NEAR(di.n_pm, 0.082552810337987767327, 1e-15);
}

TEST(Postprocessing, CorrelationDefinition) {
  EXPECT_EQ(correlation(CoincidenceCounts{}), 0.0);
  EXPECT_EQ(correlation(CoincidenceCounts{1.0, 0.0, 0.0, 1.0}), 1.0);
  EXPECT_EQ(correlation(CoincidenceCounts{0.0, 2.0, 2.0, 0.0}), -1.0);
  EXPECT_NEAR(correlation(CoincidenceCounts{1.0, 1.0, 2.0, 4.0}), 0.25, 1e-16);
}

TEST(Postprocessing, WeakSourceFollowsSingletCorrelation) {
  const auto src = SourceParams::from_gain(1e-3);
  const auto ch = ChannelParams::from_transmittance(1.0, 1.0);
  for (double theta : {0.0, 0.3, kPi / 8, 1.0, kPi / 2}) {
    for (auto m : {PostprocessingModel::kSquash, PostprocessingModel::kDiscard}) {
      EXPECT_NEAR(correlation(src, ch, MeasurementAngles::relative_angle(theta), m),
                  -std::cos(2 * theta), 1e-5);
    }
  }
}

TEST(Postprocessing, ChshSingletLimit) {
  const auto src = SourceParams::from_gain(1e-3);
  const auto ch = ChannelParams::from_transmittance(1.0, 1.0);
  for (auto m : {PostprocessingModel::kSquash, PostprocessingModel::kDiscard}) {
    const ChshResult r = chsh_detail(src, ch, m);
    EXPECT_NEAR(r.s, 2 * std::sqrt(2.0), 1e-5);
    const auto& e = r.correlations;
    EXPECT_DOUBLE_EQ(r.s, std::abs(e[0] - e[1] + e[2] + e[3]));
    EXPECT_EQ(chsh(src, ch, m), r.s);
  }
}

TEST(Postprocessing, ChshDependsOnlyOnAngleDifferences) {
  const auto src = SourceParams::from_gain(0.3);
  const auto ch = ChannelParams::from_transmittance(0.6, 0.2, 1e-4);
  const ChshResult base = chsh_detail(src, ch, PostprocessingModel::kSquash);
  const ChshResult shifted =
      chsh_detail(src, ch, PostprocessingModel::kSquash, {10.0, 55.0, 32.5, 77.5});
  EXPECT_NEAR(base.s, shifted.s, 1e-13);
}

TEST(Postprocessing, SquashDegradesWithGain) {
  const auto ch = ChannelParams::from_transmittance(0.7, 0.3);
  double previous = 4.0;
  for (double g = 0.05; g <= 0.9; g += 0.05) {
    const double s = chsh(SourceParams::from_gain(g), ch, PostprocessingModel::kSquash);
    EXPECT_LT(s, previous);
    previous = s;
  }
}

TEST(Postprocessing, SquashCellsSumToBothSidesClicking) {
  const auto t = outcome_probabilities(SourceParams::from_gain(0.5),
                                       ChannelParams::from_transmittance(0.4, 0.8, 1e-3), {0.3, 0.0});
  double both = 0.0;
  for (const ClickPattern& p : kCanonicalPatterns) {
    if ((p.a_plus || p.a_minus) && (p.b_plus || p.b_minus)) both += t[p];
  }
  EXPECT_NEAR(squash_coincidences(t).total(), both, 1e-12);
}

TEST(Postprocessing, BoundsOnRandomPoints) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const auto src = SourceParams::from_gain(0.9 * u(rng));
    const auto ch = ChannelParams::from_transmittance(0.01 + 0.99 * u(rng), 0.01 + 0.99 * u(rng),
                                                      i % 2 ? 1e-3 : 0.0);
    for (auto m : {PostprocessingModel::kSquash, PostprocessingModel::kDiscard}) {
      EXPECT_LE(std::abs(correlation(src, ch, MeasurementAngles::relative_angle(kPi * u(rng)), m)),
                1.0);
    }
    EXPECT_LE(chsh(src, ch, PostprocessingModel::kSquash), 2 * std::sqrt(2.0) + 1e-9);
  }
}

TEST(Postprocessing, ModelsCoincideForWeakSource) {
  const auto src = SourceParams::from_gain(1e-4);
  const auto ch = ChannelParams::from_transmittance(0.7, 0.01);
  EXPECT_LE(std::abs(chsh(src, ch, PostprocessingModel::kSquash) -
                     chsh(src, ch, PostprocessingModel::kDiscard)),
            1e-3);
}

TEST(Postprocessing, DiscardExceedsTsirelsonBoundAtHighGain) {
  const auto ch = ChannelParams::from_transmittance(0.7, 0.01);
  double best = 0.0;
  for (double g = 0.05; g < 0.9951; g += 0.005) {
    best = std::max(best, chsh(SourceParams::from_gain(g), ch, PostprocessingModel::kDiscard));
  }
  EXPECT_GT(best, 2 * std::sqrt(2.0));
}

}  // namespace
}  // namespace hbepp
