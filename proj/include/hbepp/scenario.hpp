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

// Scenario configuration and subcommand dispatch behind the hbepp-link CLI.
//
// Configuration text is one `key = value` per line; `#` starts a comment.
// Defaults describe a satellite downlink: mu = 0.037 pairs per coherence
// time, Alice loss 1.6 dB, dark count 6.25e-7 per coherence time, 810 nm,
// 2.0 ns coincidence window, 6.25 ns coherence time.

#ifndef HBEPP_SCENARIO_HPP
#define HBEPP_SCENARIO_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hbepp/fock_oracle.hpp"
#include "hbepp/params.hpp"
#include "hbepp/postprocessing.hpp"

namespace hbepp {

enum class SourceForm { kGain, kMeanPhoton };
enum class ArmForm { kTransmittance, kLossDb };
enum class OutputFormat { kAuto, kCsv, kText };

struct SweepSpec {
  /// One of: theta_deg, g, mu, loss2_db.
  std::string variable;
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  std::vector<double> values() const;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct ScenarioConfig {
  SourceForm source_form = SourceForm::kMeanPhoton;
  double source_value = 0.037;
  ArmForm arm1_form = ArmForm::kLossDb;
  double arm1_value = 1.6;
  ArmForm arm2_form = ArmForm::kLossDb;
  double arm2_value = 30.0;
  double dark_count = 6.25e-7;
  double theta1_deg = 0.0;
  double theta2_deg = 0.0;
  std::optional<SweepSpec> sweep;
  PostprocessingModel model = PostprocessingModel::kSquash;
  int n_max = fock::kDefaultMaxPairs;
  bool per_second = false;
  OutputFormat format = OutputFormat::kAuto;
  // Descriptive only, except coherence_time_ns which scales per-second rates.
  double wavelength_nm = 810.0;
  double window_ns = 2.0;
  double coherence_time_ns = 6.25;

  SourceParams source() const;
  ChannelParams channel() const;
  MeasurementAngles angles() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Applies `text` on top of `base`. Within one text at most one of
/// {source.g, source.mu}, {channel.tau1, channel.loss1_db} and
/// {channel.tau2, channel.loss2_db} may appear. Unknown keys, malformed values
/// and out-of-range values throw ParseError naming the key.
ScenarioConfig parse_config(std::string_view text, const ScenarioConfig& base = {});

/// Canonical `key = value` text; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

inline constexpr std::string_view kSubcommands[] = {"probs",    "chsh",  "keyrate",
                                                    "optimize", "sweep", "oracle-check"};

/// Runs one subcommand and returns its full output. Throws ParseError for an
/// unknown subcommand or a sweep variable the subcommand cannot use.
std::string run_subcommand(std::string_view name, const ScenarioConfig& config);

}  // namespace hbepp

#endif  // HBEPP_SCENARIO_HPP
