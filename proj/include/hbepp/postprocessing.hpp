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

#ifndef HBEPP_POSTPROCESSING_HPP
#define HBEPP_POSTPROCESSING_HPP

#include <array>
#include <optional>
#include <string_view>

#include "hbepp/click_pattern.hpp"
#include "hbepp/params.hpp"

namespace hbepp {

/// How multi-click events are turned into (Alice, Bob) outcome pairs.
enum class PostprocessingModel {
  /// A double click on one side becomes a uniformly random bit.
  kSquash,
  /// Only exact two-fold (one click per side) coincidences are kept.
  kDiscard,
};

std::string_view to_string(PostprocessingModel model);
std::optional<PostprocessingModel> parse_model(std::string_view name);

/// Coincidence probabilities per temporal mode after post-processing.
struct CoincidenceCounts {
  double n_pp = 0.0;
  double n_pm = 0.0;
  double n_mp = 0.0;
  double n_mm = 0.0;

  double total() const { return n_pp + n_pm + n_mp + n_mm; }
};

CoincidenceCounts squash_coincidences(const ProbabilityTable& table);
CoincidenceCounts discard_coincidences(const ProbabilityTable& table);
CoincidenceCounts coincidences(const ProbabilityTable& table, PostprocessingModel model);

/// (N++ - N+- - N-+ + N--) / (N++ + N+- + N-+ + N--); 0 if nothing coincides.
double correlation(const CoincidenceCounts& counts);

/// Correlation at the given analyzer angles.
double correlation(const SourceParams& source, const ChannelParams& channel,
                   const MeasurementAngles& angles, PostprocessingModel model);

/// Alice at 0 and 45 degrees, Bob at 22.5 and 67.5 degrees.
struct ChshSettings {
  double alice1_deg = 0.0;
  double alice2_deg = 45.0;
  double bob1_deg = 22.5;
  double bob2_deg = 67.5;
};

struct ChshResult {
  /// E(A1,B1), E(A1,B2), E(A2,B1), E(A2,B2).
  std::array<double, 4> correlations{};
  double s = 0.0;
};

ChshResult chsh_detail(const SourceParams& source, const ChannelParams& channel,
                       PostprocessingModel model, const ChshSettings& settings = {});

/// S = |E(A1,B1) - E(A1,B2) + E(A2,B1) + E(A2,B2)|.
double chsh(const SourceParams& source, const ChannelParams& channel, PostprocessingModel model);

}  // namespace hbepp

#endif  // HBEPP_POSTPROCESSING_HPP
