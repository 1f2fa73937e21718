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

#include "hbepp/fock_oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "hbepp/analytic.hpp"

namespace hbepp::fock {
namespace {

constexpr double kPi = std::numbers::pi;

JointPhotonDistribution point_mass(int n_max, int n1p, int n1m, int n2p, int n2m) {
  JointPhotonDistribution d{JointArray(n_max)};
  const PartyBasis& b = d.mass.basis();
  d.mass(b.index(n1p, n1m), b.index(n2p, n2m)) = 1.0;
  return d;
}

TEST(PartyBasis, IndexesTriangle) {
  const PartyBasis b(3);
  EXPECT_EQ(b.size(), 10u);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(b.index(b.first(i), b.second(i)), i);
  EXPECT_EQ(b.index(0, 0), 0u);
  EXPECT_EQ(b.index(0, 3), 9u);
}

TEST(FockState, VacuumSource) {
  const PairState s = build_state(0.0, 5);
  EXPECT_EQ(s.amplitudes.at(0, 0, 0, 0), 1.0);
  EXPECT_EQ(s.amplitudes.sum_of_squares(), 1.0);
}

TEST(FockState, VacuumOnlyTruncation) {
  const PairState s = build_state(0.6, 0);
  EXPECT_NEAR(s.amplitudes.at(0, 0, 0, 0), 0.64, 1e-16);
}

TEST(FockState, NormMatchesTruncationBound) {
  for (double g : {0.1, 0.4, 0.6, 0.8}) {
    for (int n_max : {0, 1, 3, 10, 40}) {
      const PairState s = build_state(g, n_max);
      EXPECT_NEAR(s.amplitudes.sum_of_squares(), 1.0 - truncation_error_bound(g, n_max), 1e-14)
          << "g=" << g << " n_max=" << n_max;
    }
  }
  EXPECT_LT(truncation_error_bound(0.6, 40), 1e-15);
}

TEST(FockState, SingletStructureAtOnePair) {
  const double g = 0.5;
  const PairState s = build_state(g, 2);
  const double a1 = (1 - g * g) * g;
  EXPECT_NEAR(s.amplitudes.at(1, 0, 0, 1), a1, 1e-16);
  EXPECT_NEAR(s.amplitudes.at(0, 1, 1, 0), -a1, 1e-16);
  EXPECT_EQ(s.amplitudes.at(1, 0, 1, 0), 0.0);
  EXPECT_EQ(s.amplitudes.at(0, 1, 0, 1), 0.0);
  const double a2 = (1 - g * g) * g * g;
  EXPECT_NEAR(s.amplitudes.at(2, 0, 0, 2), a2, 1e-16);
  EXPECT_NEAR(s.amplitudes.at(1, 1, 1, 1), -a2, 1e-16);
  EXPECT_NEAR(s.amplitudes.at(0, 2, 2, 0), a2, 1e-16);
}

TEST(FockState, SinglePhotonRotation) {
  const double g = 0.5;
  const double theta = 0.4;
  const PairState r = rotate_modes(build_state(g, 1), theta, 0.0);
  const double a1 = (1 - g * g) * g;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // a_H^dag = c a_+^dag - s a_-^dag, a_V^dag = s a_+^dag + c a_-^dag on Alice's side.
  EXPECT_NEAR(r.amplitudes.at(1, 0, 0, 1), a1 * c, 1e-15);
  EXPECT_NEAR(r.amplitudes.at(0, 1, 0, 1), -a1 * s, 1e-15);
  EXPECT_NEAR(r.amplitudes.at(1, 0, 1, 0), -a1 * s, 1e-15);
  EXPECT_NEAR(r.amplitudes.at(0, 1, 1, 0), -a1 * c, 1e-15);
}

TEST(FockState, RotationIsUnitary) {
  const PairState s = build_state(0.7, 12);
  const PairState r = rotate_modes(s, 0.3, -1.1);
  EXPECT_NEAR(r.amplitudes.sum_of_squares(), s.amplitudes.sum_of_squares(), 1e-13);
}

TEST(FockState, JointRotationLeavesStateInvariant) {
  const PairState s = build_state(0.6, 15);
  const PairState r = rotate_modes(s, 0.8, 0.8);
  for (std::size_t i = 0; i < s.amplitudes.data().size(); ++i) {
    EXPECT_NEAR(r.amplitudes.data()[i], s.amplitudes.data()[i], 1e-14);
  }
}

TEST(PhotonDistribution, EqualPairNumbersOnBothSides) {
  const auto d = photon_distribution(rotate_modes(build_state(0.6, 8), 0.2, 1.3));
  const PartyBasis& b = d.mass.basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b.first(i) + b.second(i) != b.first(j) + b.second(j)) EXPECT_EQ(d.mass(i, j), 0.0);
    }
  }
}

TEST(Loss, BinomialThinningExamples) {
  const auto one = apply_loss(point_mass(2, 1, 0, 0, 0), 0.3, 0.9);
  EXPECT_NEAR(one.mass.at(1, 0, 0, 0), 0.3, 1e-16);
  EXPECT_NEAR(one.mass.at(0, 0, 0, 0), 0.7, 1e-16);

  const auto two = apply_loss(point_mass(2, 0, 0, 2, 0), 0.9, 0.5);
  EXPECT_NEAR(two.mass.at(0, 0, 2, 0), 0.25, 1e-16);
  EXPECT_NEAR(two.mass.at(0, 0, 1, 0), 0.5, 1e-16);
  EXPECT_NEAR(two.mass.at(0, 0, 0, 0), 0.25, 1e-16);

  const auto split = apply_loss(point_mass(2, 1, 1, 0, 0), 0.5, 1.0);
  EXPECT_NEAR(split.mass.at(1, 0, 0, 0), 0.25, 1e-16);
  EXPECT_NEAR(split.mass.at(0, 1, 0, 0), 0.25, 1e-16);
}

TEST(Loss, ConservesMass) {
  const auto d = photon_distribution(rotate_modes(build_state(0.7, 20), 0.4, 0.0));
  for (double t1 : {1.0, 0.5, 0.01}) {
    for (double t2 : {1.0, 0.2}) {
      EXPECT_NEAR(apply_loss(d, t1, t2).mass.sum(), d.mass.sum(), 1e-13);
    }
  }
}

TEST(Clicks, DarkCountsOnVacuum) {
  const auto t = click_probabilities(point_mass(1, 0, 0, 0, 0), 0.1);
  EXPECT_NEAR(t.at(0), std::pow(0.9, 4), 1e-16);
  EXPECT_NEAR(t.at(15), 1e-4, 1e-18);
  EXPECT_NEAR(t.total(), 1.0, 1e-15);
}

TEST(Oracle, VacuumSource) {
  const auto t = oracle_probabilities(SourceParams::from_gain(0.0),
                                      ChannelParams::from_transmittance(0.5, 0.5), {});
  EXPECT_NEAR(t.at(0), 1.0, 1e-15);
}

TEST(Oracle, AgreesWithClosedForm) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const double g = 0.7 * u(rng);
    const auto src = SourceParams::from_gain(g);
    const auto ch = ChannelParams::from_transmittance(0.01 + 0.99 * u(rng), 0.01 + 0.99 * u(rng),
                                                      i % 2 ? 1e-3 : 0.0);
    const MeasurementAngles a{kPi * u(rng), kPi * u(rng)};
    const auto oracle = oracle_probabilities(src, ch, a);
    const auto closed = outcome_probabilities(src, ch, a);
    EXPECT_LE(oracle.max_abs_difference(closed), truncation_error_bound(g, kDefaultMaxPairs) + 1e-12);
  }
}

TEST(Oracle, LosslessChannels) {
  const auto src = SourceParams::from_gain(0.5);
  const auto ch = ChannelParams::from_transmittance(1.0, 1.0);
  const MeasurementAngles a{0.3, 0.1};
  EXPECT_LE(oracle_probabilities(src, ch, a).max_abs_difference(outcome_probabilities(src, ch, a)),
            1e-12);
}

TEST(Oracle, DependsOnlyOnRelativeAngle) {
  const auto src = SourceParams::from_gain(0.6);
  const auto ch = ChannelParams::from_transmittance(0.7, 0.3, 1e-3);
  const auto base = oracle_probabilities(src, ch, {0.5, 0.2});
  const auto shifted = oracle_probabilities(src, ch, {0.5 + 1.1, 0.2 + 1.1});
  EXPECT_LE(base.max_abs_difference(shifted), 1e-12);
}

}  // namespace
}  // namespace hbepp::fock
