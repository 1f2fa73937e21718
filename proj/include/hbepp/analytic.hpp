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

// Closed-form click statistics of a two-mode polarization-entangled pair
// source whose halves cross lossy arms (transmittances tau1, tau2) and are
// analyzed at relative angle theta by four threshold detectors.
//
// Every probability is assembled from "vacuum-set" probabilities
//
//   V(S) = Pr[no detector in S clicks]
//        = (1-g^2)^2 * Q_S(theta) * (1-d)^|S|,
//
// where Q_S is the rational function
//
//   Q = ABCD / (ABCD + G^2 - G(AD+BC)cos^2(theta) - G(AC+BD)sin^2(theta)),
//   G = g^2 (1-tau1)(1-tau2),
//
// with A, B (Alice +/-) and C, D (Bob +/-) equal to 1 for modes inside S and
// to 1-tau for marginalized modes. Exact click patterns then follow by
// inclusion-exclusion over the clicked modes.

#ifndef HBEPP_ANALYTIC_HPP
#define HBEPP_ANALYTIC_HPP

#include <array>

#include "hbepp/click_pattern.hpp"
#include "hbepp/params.hpp"

namespace hbepp {

/// Assignment of the four Q-function coefficients. A mode in `vacuum_modes`
/// gets coefficient 1; every other mode is marginalized and gets 1 - tau of
/// its arm.
class QCoefficients {
 public:
  QCoefficients(ModeSet vacuum_modes, double tau1, double tau2)
      : vacuum_(vacuum_modes), tau1_(tau1), tau2_(tau2) {}

  /// Q_j of the numbered coefficient table, j = 1..16. Throws DomainError otherwise.
  static QCoefficients numbered(int j, double tau1, double tau2);

  ModeSet vacuum_modes() const noexcept { return vacuum_; }
  bool marginalized(Mode m) const noexcept { return !contains(vacuum_, m); }

  double A() const noexcept { return coefficient(Mode::kAlicePlus); }
  double B() const noexcept { return coefficient(Mode::kAliceMinus); }
  double C() const noexcept { return coefficient(Mode::kBobPlus); }
  double D() const noexcept { return coefficient(Mode::kBobMinus); }
  double coefficient(Mode m) const noexcept;

  /// G = g^2 (1-tau1)(1-tau2).
  double G(double g) const noexcept { return g * g * (1.0 - tau1_) * (1.0 - tau2_); }

  double tau1() const noexcept { return tau1_; }
  double tau2() const noexcept { return tau2_; }

 private:
  ModeSet vacuum_;
  double tau1_;
  double tau2_;
};

/// Q(theta) with the common factor (1-tau1)^k (1-tau2)^m of numerator and
/// denominator cancelled symbolically (k, m = number of marginalized modes per
/// side). Identical to the literal ratio wherever that is defined, and finite
/// at tau = 1 where the literal ratio is 0/0.
double q_function(const QCoefficients& coeffs, double g, double theta);

/// The literal ratio. Returns NaN for 0/0; throws NumericError when only the
/// denominator vanishes.
double q_function_direct(const QCoefficients& coeffs, double g, double theta);

/// Pr[no click on any detector in `vacuum_modes`], marginalized over the
/// remaining detectors. Includes independent dark counts.
double vacuum_set_probability(ModeSet vacuum_modes, const SourceParams& source,
                              const ChannelParams& channel, double theta);

/// All 16 vacuum-set probabilities, indexed by ModeSet mask.
std::array<double, kNumPatterns> vacuum_set_table(const SourceParams& source,
                                                  const ChannelParams& channel, double theta);

/// Inclusion-exclusion over `vacuum_set_table`, before clamping.
ProbabilityTable outcome_probabilities_unclamped(const SourceParams& source,
                                                 const ChannelParams& channel,
                                                 const MeasurementAngles& angles);

/// Production path: inclusion-exclusion, then rounding-level clamping into [0,1].
ProbabilityTable outcome_probabilities(const SourceParams& source, const ChannelParams& channel,
                                       const MeasurementAngles& angles);

/// The sixteen explicit closed-form combinations of Q_1..Q_16, evaluated in
/// dependency order. These formulas have no dark-count term; throws
/// DomainError if channel.dark_count() != 0.
ProbabilityTable explicit_probabilities(const SourceParams& source, const ChannelParams& channel,
                                        const MeasurementAngles& angles);

}  // namespace hbepp

#endif  // HBEPP_ANALYTIC_HPP
