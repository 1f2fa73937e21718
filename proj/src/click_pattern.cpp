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

#include "hbepp/click_pattern.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hbepp/errors.hpp"

namespace hbepp {
namespace {

constexpr std::array<std::uint8_t, kNumPatterns> make_mask_to_index() {
  std::array<std::uint8_t, kNumPatterns> out{};
  for (std::size_t i = 0; i < kNumPatterns; ++i) {
    out[kCanonicalPatterns[i].mask()] = static_cast<std::uint8_t>(i);
  }
  return out;
}

constexpr auto kMaskToIndex = make_mask_to_index();

}  // namespace

std::size_t ClickPattern::index() const { return kMaskToIndex[mask()]; }

std::string ClickPattern::bits() const {
  std::string s(4, '0');
  if (a_plus) s[0] = '1';
  if (a_minus) s[1] = '1';
  if (b_plus) s[2] = '1';
  if (b_minus) s[3] = '1';
  return s;
}

std::string ClickPattern::symbol() const {
  std::string alice;
  if (a_plus) alice += "A+";
  if (a_minus) alice += "A-";
  std::string bob;
  if (b_plus) bob += "B+";
  if (b_minus) bob += "B-";
  return "P(" + (alice.empty() ? std::string("0") : alice) + "," +
         (bob.empty() ? std::string("0") : bob) + ")";
}

double ProbabilityTable::total() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

double ProbabilityTable::max_abs_difference(const ProbabilityTable& other) const {
  double m = 0.0;
  for (std::size_t i = 0; i < kNumPatterns; ++i) {
    m = std::max(m, std::abs(values_[i] - other.values_[i]));
  }
  return m;
}

ProbabilityTable ProbabilityTable::party_swapped() const {
  ProbabilityTable out;
  for (const ClickPattern& p : kCanonicalPatterns) out[p] = (*this)[p.swapped()];
  return out;
}

ProbabilityTable ProbabilityTable::clamped(double tolerance) const {
  ProbabilityTable out = *this;
  for (std::size_t i = 0; i < kNumPatterns; ++i) {
    double& v = out.values_[i];
    if (v < -tolerance || v > 1.0 + tolerance || std::isnan(v)) {
      throw NumericError("probability of " + kCanonicalPatterns[i].symbol() + " = " +
                         std::to_string(v) + " is outside [0,1] beyond rounding");
    }
    v = std::clamp(v, 0.0, 1.0);
  }
  return out;
}

}  // namespace hbepp
