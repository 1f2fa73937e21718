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

// BBM92 key rates in the asymptotic, Shannon-limit regime:
//
//   R_sec = max(0, R_sift * (1 - 2 H2(eps)))
//
// with eps and R_sift taken from matched-basis (relative angle 0)
// coincidences. Rates are probabilities per temporal mode.

#ifndef HBEPP_KEYRATE_HPP
#define HBEPP_KEYRATE_HPP

#include <optional>
#include <span>
#include <vector>

#include "hbepp/params.hpp"
#include "hbepp/postprocessing.hpp"

namespace hbepp {

/// -e log2(e) - (1-e) log2(1-e), with H2(0) = H2(1) = 0. Throws DomainError
/// outside [0,1].
double binary_entropy(double e);

struct SiftResult {
  double qber = 0.0;
  double sifted_rate = 0.0;
  CoincidenceCounts counts;
};

/// Errors are same-sign outcomes (the singlet is anti-correlated in matched
/// bases); half of all coincidences survive basis reconciliation.
SiftResult qber_and_sift(const SourceParams& source, const ChannelParams& channel,
                         PostprocessingModel model = PostprocessingModel::kSquash);

/// Secure fraction with error-correction efficiency f = 1, clamped at 0.
double secure_rate(double qber, double sifted_rate);

struct KeyRateReport {
  double qber = 0.0;
  double sifted_rate = 0.0;
  double secure_rate = 0.0;
  double g_used = 0.0;
  double mu_used = 0.0;
};

KeyRateReport key_rate(const SourceParams& source, const ChannelParams& channel,
                       PostprocessingModel model = PostprocessingModel::kSquash);

struct GainBounds {
  double lo = 1e-3;
  double hi = 0.95;
};

struct OptimizerOptions {
  int grid_points = 256;
  double tolerance = 1e-9;
  int max_iterations = 200;
};

struct OptimizationResult {
  /// Empty when R_sec vanishes over the whole bracket.
  std::optional<double> g_opt;
  std::optional<double> mu_opt;
  double secure_rate_at_opt = 0.0;
  int iterations = 0;
  /// Refinement bracket around the best grid point.
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double secure_rate_at_lo = 0.0;
  double secure_rate_at_hi = 0.0;
};

/// argmax_g R_sec(g): grid scan, then golden-section search on the bracket
/// formed by the neighbours of the best grid point.
/// Throws DomainError unless 0 < lo < hi < 1.
OptimizationResult optimize_gain(const ChannelParams& channel, GainBounds bounds = {},
                                 const OptimizerOptions& options = {},
                                 PostprocessingModel model = PostprocessingModel::kSquash);

struct PassivePoint {
  double loss2_db = 0.0;
  double secure_rate_fixed = 0.0;
  double secure_rate_opt = 0.0;
  std::optional<double> mu_opt;
  /// Empty where the optimal rate is zero.
  std::optional<double> ratio;
};

struct PassiveSweep {
  double mu_fixed = 0.0;
  std::vector<PassivePoint> points;
  std::optional<double> min_ratio;
};

/// R_sec(mu_fixed) / R_sec(mu_opt) along Bob's loss. Alice's transmittance and
/// the dark count come from `channel_base`; Bob's arm is replaced per point.
PassiveSweep passive_performance(double mu_fixed, const ChannelParams& channel_base,
                                 std::span<const double> loss2_db, GainBounds bounds = {},
                                 const OptimizerOptions& options = {});

}  // namespace hbepp

#endif  // HBEPP_KEYRATE_HPP
