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

#include <cmath>

#include "hbepp/analytic.hpp"

namespace hbepp {
namespace {

// Outcome of one side: '+' only, '-' only, or both detectors.
enum class Side { kPlus, kMinus, kBoth };

constexpr ClickPattern pattern(Side alice, Side bob) {
  return {alice != Side::kMinus, alice != Side::kPlus, bob != Side::kMinus, bob != Side::kPlus};
}

double squash_cell(const ProbabilityTable& t, Side alice, Side bob) {
  return t[pattern(alice, bob)] + 0.5 * t[pattern(Side::kBoth, bob)] +
         0.5 * t[pattern(alice, Side::kBoth)] + 0.25 * t[pattern(Side::kBoth, Side::kBoth)];
}

}  // namespace

std::string_view to_string(PostprocessingModel model) {
  return model == PostprocessingModel::kSquash ? "squash" : "discard";
}

std::optional<PostprocessingModel> parse_model(std::string_view name) {
  if (name == "squash") return PostprocessingModel::kSquash;
  if (name == "discard") return PostprocessingModel::kDiscard;
  return std::nullopt;
}

CoincidenceCounts squash_coincidences(const ProbabilityTable& table) {
  return {squash_cell(table, Side::kPlus, Side::kPlus), squash_cell(table, Side::kPlus, Side::kMinus),
          squash_cell(table, Side::kMinus, Side::kPlus),
          squash_cell(table, Side::kMinus, Side::kMinus)};
}

CoincidenceCounts discard_coincidences(const ProbabilityTable& table) {
  return {table[pattern(Side::kPlus, Side::kPlus)], table[pattern(Side::kPlus, Side::kMinus)],
          table[pattern(Side::kMinus, Side::kPlus)], table[pattern(Side::kMinus, Side::kMinus)]};
}

CoincidenceCounts coincidences(const ProbabilityTable& table, PostprocessingModel model) {
  return model == PostprocessingModel::kSquash ? squash_coincidences(table)
                                               : discard_coincidences(table);
}

double correlation(const CoincidenceCounts& counts) {
  const double total = counts.total();
  if (total == 0.0) return 0.0;
  return (counts.n_pp - counts.n_pm - counts.n_mp + counts.n_mm) / total;
}

double correlation(const SourceParams& source, const ChannelParams& channel,
                   const MeasurementAngles& angles, PostprocessingModel model) {
  return correlation(coincidences(outcome_probabilities(source, channel, angles), model));
}

ChshResult chsh_detail(const SourceParams& source, const ChannelParams& channel,
                       PostprocessingModel model, const ChshSettings& settings) {
  const auto e = [&](double a_deg, double b_deg) {
    return correlation(source, channel, MeasurementAngles::from_degrees(a_deg, b_deg), model);
  };
  ChshResult r;
  r.correlations = {e(settings.alice1_deg, settings.bob1_deg), e(settings.alice1_deg, settings.bob2_deg),
                    e(settings.alice2_deg, settings.bob1_deg), e(settings.alice2_deg, settings.bob2_deg)};
  r.s = std::abs(r.correlations[0] - r.correlations[1] + r.correlations[2] + r.correlations[3]);
  return r;
}

double chsh(const SourceParams& source, const ChannelParams& channel, PostprocessingModel model) {
  return chsh_detail(source, channel, model).s;
}

}  // namespace hbepp
