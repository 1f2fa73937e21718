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

#include "hbepp/analytic.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "hbepp/errors.hpp"

namespace hbepp {
namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// Marginalized modes of Q_1..Q_16, one row per numbered coefficient set
// (bit 0 = a+, bit 1 = a-, bit 2 = b+, bit 3 = b-).
constexpr std::array<ModeSet, kNumPatterns> kNumberedMarginalized = {
    0b0000,  // Q1:  1,      1,      1,      1
    0b0001,  // Q2:  1-t1,   1,      1,      1
    0b0010,  // Q3:  1,      1-t1,   1,      1
    0b0100,  // Q4:  1,      1,      1-t2,   1
    0b1000,  // Q5:  1,      1,      1,      1-t2
    0b0101,  // Q6:  1-t1,   1,      1-t2,   1
    0b1001,  // Q7:  1-t1,   1,      1,      1-t2
    0b0110,  // Q8:  1,      1-t1,   1-t2,   1
    0b1010,  // Q9:  1,      1-t1,   1,      1-t2
    0b0011,  // Q10: 1-t1,   1-t1,   1,      1
    0b1100,  // Q11: 1,      1,      1-t2,   1-t2
    0b0111,  // Q12: 1-t1,   1-t1,   1-t2,   1
    0b1011,  // Q13: 1-t1,   1-t1,   1,      1-t2
    0b1101,  // Q14: 1-t1,   1,      1-t2,   1-t2
    0b1110,  // Q15: 1,      1-t1,   1-t2,   1-t2
    0b1111,  // Q16: 1-t1,   1-t1,   1-t2,   1-t2
};

}  // namespace

QCoefficients QCoefficients::numbered(int j, double tau1, double tau2) {
  if (j < 1 || j > 16) throw DomainError("Q index must be in 1..16, got " + std::to_string(j));
  return QCoefficients(static_cast<ModeSet>(kAllModes & ~kNumberedMarginalized[j - 1]), tau1,
                       tau2);
}

double QCoefficients::coefficient(Mode m) const noexcept {
  if (!marginalized(m)) return 1.0;
  const bool alice = m == Mode::kAlicePlus || m == Mode::kAliceMinus;
  return 1.0 - (alice ? tau1_ : tau2_);
}

double q_function(const QCoefficients& coeffs, double g, double theta) {
  const double a = 1.0 - coeffs.tau1();
  const double b = 1.0 - coeffs.tau2();
  const int alpha = coeffs.marginalized(Mode::kAlicePlus) ? 1 : 0;
  const int beta = coeffs.marginalized(Mode::kAliceMinus) ? 1 : 0;
  const int gamma = coeffs.marginalized(Mode::kBobPlus) ? 1 : 0;
  const int delta = coeffs.marginalized(Mode::kBobMinus) ? 1 : 0;
  const int k = alpha + beta;
  const int m = gamma + delta;

  // Numerator ABCD = a^k b^m divides every denominator term; all exponents
  // below are therefore >= 0.
  const double g2 = g * g;
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  const double ad = ipow(a, 1 + alpha - k) * ipow(b, 1 + delta - m);
  const double bc = ipow(a, 1 + beta - k) * ipow(b, 1 + gamma - m);
  const double ac = ipow(a, 1 + alpha - k) * ipow(b, 1 + gamma - m);
  const double bd = ipow(a, 1 + beta - k) * ipow(b, 1 + delta - m);
  const double denom =
      1.0 + g2 * g2 * ipow(a, 2 - k) * ipow(b, 2 - m) - g2 * (ad + bc) * c2 - g2 * (ac + bd) * s2;
  if (!(denom > 0.0)) {
    throw NumericError("Q-function denominator is not positive: " + std::to_string(denom));
  }
  return 1.0 / denom;
}

double q_function_direct(const QCoefficients& coeffs, double g, double theta) {
  const double A = coeffs.A(), B = coeffs.B(), C = coeffs.C(), D = coeffs.D();
  const double G = coeffs.G(g);
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  const double num = A * B * C * D;
  const double den = num + G * G - G * (A * D + B * C) * c2 - G * (A * C + B * D) * s2;
  if (den == 0.0) {
    if (num == 0.0) return std::numeric_limits<double>::quiet_NaN();
    throw NumericError("Q-function denominator vanished with nonzero numerator");
  }
  return num / den;
}

double vacuum_set_probability(ModeSet vacuum_modes, const SourceParams& source,
                              const ChannelParams& channel, double theta) {
  const double g = source.gain();
  const double one_minus_g2 = 1.0 - g * g;
  const QCoefficients coeffs(vacuum_modes, channel.tau1(), channel.tau2());
  const double photon_vacuum = one_minus_g2 * one_minus_g2 * q_function(coeffs, g, theta);
  return photon_vacuum * ipow(1.0 - channel.dark_count(), std::popcount(vacuum_modes));
}

std::array<double, kNumPatterns> vacuum_set_table(const SourceParams& source,
                                                  const ChannelParams& channel, double theta) {
  std::array<double, kNumPatterns> v{};
  for (unsigned s = 0; s < kNumPatterns; ++s) {
    v[s] = vacuum_set_probability(static_cast<ModeSet>(s), source, channel, theta);
  }
  return v;
}

ProbabilityTable outcome_probabilities_unclamped(const SourceParams& source,
                                                 const ChannelParams& channel,
                                                 const MeasurementAngles& angles) {
  const auto v = vacuum_set_table(source, channel, angles.relative());
  ProbabilityTable table;
  for (unsigned clicks = 0; clicks < kNumPatterns; ++clicks) {
    const unsigned quiet = kAllModes & ~clicks;
    // P(exactly `clicks` fire) = sum over T subset of clicks of (-1)^|T| V(quiet | T).
    double p = 0.0;
    for (unsigned t = clicks;; t = (t - 1) & clicks) {
      const double term = v[quiet | t];
      p += (std::popcount(t) % 2 == 0) ? term : -term;
      if (t == 0) break;
    }
    table[ClickPattern::from_mask(static_cast<ModeSet>(clicks))] = p;
  }
  return table;
}

ProbabilityTable outcome_probabilities(const SourceParams& source, const ChannelParams& channel,
                                       const MeasurementAngles& angles) {
  return outcome_probabilities_unclamped(source, channel, angles).clamped();
}

ProbabilityTable explicit_probabilities(const SourceParams& source, const ChannelParams& channel,
                                        const MeasurementAngles& angles) {
  if (channel.dark_count() != 0.0) {
    throw DomainError("explicit formulas assume zero dark counts");
  }
  const double g = source.gain();
  const double w = (1.0 - g * g) * (1.0 - g * g);
  const double theta = angles.relative();
  std::array<double, 17> q{};
  for (int j = 1; j <= 16; ++j) {
    q[j] = q_function(QCoefficients::numbered(j, channel.tau1(), channel.tau2()), g, theta);
  }

  const double p00 = w * q[1];
  const double pA = w * q[2] - p00;
  const double pa = w * q[3] - p00;
  const double pB = w * q[4] - p00;
  const double pb = w * q[5] - p00;
  const double pAB = w * q[6] - (pA + pB) - p00;
  const double pAb = w * q[7] - (pA + pb) - p00;
  const double paB = w * q[8] - (pa + pB) - p00;
  const double pab = w * q[9] - (pa + pb) - p00;
  const double pAa = w * q[10] - (pA + pa) - p00;
  const double pBb = w * q[11] - (pB + pb) - p00;
  const double pAaB = w * q[12] - (pAB + paB + pAa) - (pA + pa + pB) - p00;
  const double pAab = w * q[13] - (pAb + pab + pAa) - (pA + pa + pb) - p00;
  const double pABb = w * q[14] - (pAB + pAb + pBb) - (pA + pB + pb) - p00;
  const double paBb = w * q[15] - (paB + pab + pBb) - (pa + pB + pb) - p00;
  const double pAaBb = w * q[16] - (pAaB + pAab + pABb + paBb) -
                       (pAB + pAb + paB + pab + pAa + pBb) - (pA + pa + pB + pb) - p00;

  return ProbabilityTable({p00, pA, pa, pB, pb, pAB, pAb, paB, pab, pAa, pBb, pAaB, pAab, pABb,
                           paBb, pAaBb});
}

}  // namespace hbepp
