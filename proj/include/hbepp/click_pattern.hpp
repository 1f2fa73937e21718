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

#ifndef HBEPP_CLICK_PATTERN_HPP
#define HBEPP_CLICK_PATTERN_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

namespace hbepp {

/// Detector modes, in the order Alice(+), Alice(-), Bob(+), Bob(-).
enum class Mode : std::uint8_t { kAlicePlus = 0, kAliceMinus = 1, kBobPlus = 2, kBobMinus = 3 };

inline constexpr std::size_t kNumModes = 4;
inline constexpr std::size_t kNumPatterns = 16;

/// A subset of the four detector modes, stored as a bitmask
/// (bit i set <=> Mode(i) is in the set).
using ModeSet = std::uint8_t;

inline constexpr ModeSet kAllModes = 0b1111;

constexpr bool contains(ModeSet set, Mode m) {
  return (set >> static_cast<unsigned>(m)) & 1u;
}

/// Which of the four threshold detectors fired in one temporal mode.
struct ClickPattern {
  bool a_plus = false;
  bool a_minus = false;
  bool b_plus = false;
  bool b_minus = false;

  static constexpr ClickPattern from_mask(ModeSet clicks) {
    return {contains(clicks, Mode::kAlicePlus), contains(clicks, Mode::kAliceMinus),
            contains(clicks, Mode::kBobPlus), contains(clicks, Mode::kBobMinus)};
  }

  /// Modes that clicked.
  constexpr ModeSet mask() const {
    return static_cast<ModeSet>((a_plus ? 1u : 0u) | (a_minus ? 2u : 0u) | (b_plus ? 4u : 0u) |
                                (b_minus ? 8u : 0u));
  }

  /// Alice's and Bob's roles exchanged.
  constexpr ClickPattern swapped() const { return {b_plus, b_minus, a_plus, a_minus}; }

  /// Position in the canonical 16-entry ordering.
  std::size_t index() const;

  /// Bits as "a+ a- b+ b-", e.g. "1010" for a (+,+) coincidence.
  std::string bits() const;

  /// Readable symbol such as "P(A+A-,B+)"; "0" stands for no click on that side.
  std::string symbol() const;

  friend constexpr bool operator==(const ClickPattern&, const ClickPattern&) = default;
};

/// The 16 click patterns in canonical order: P(0,0), the four single clicks,
/// the four (Alice, Bob) coincidences, the two one-sided double clicks, the
/// four triple clicks and finally the quadruple click.
inline constexpr std::array<ClickPattern, kNumPatterns> kCanonicalPatterns = {{
    {false, false, false, false},  // P(0,0)
    {true, false, false, false},   // P(A+,0)
    {false, true, false, false},   // P(A-,0)
    {false, false, true, false},   // P(0,B+)
    {false, false, false, true},   // P(0,B-)
    {true, false, true, false},    // P(A+,B+)
    {true, false, false, true},    // P(A+,B-)
    {false, true, true, false},    // P(A-,B+)
    {false, true, false, true},    // P(A-,B-)
    {true, true, false, false},    // P(A+A-,0)
    {false, false, true, true},    // P(0,B+B-)
    {true, true, true, false},     // P(A+A-,B+)
    {true, true, false, true},     // P(A+A-,B-)
    {true, false, true, true},     // P(A+,B+B-)
    {false, true, true, true},     // P(A-,B+B-)
    {true, true, true, true},      // P(A+A-,B+B-)
}};

/// Probability of each click pattern, stored in canonical order.
class ProbabilityTable {
 public:
  ProbabilityTable() { values_.fill(0.0); }
  explicit ProbabilityTable(const std::array<double, kNumPatterns>& values) : values_(values) {}

  double operator[](const ClickPattern& p) const { return values_[p.index()]; }
  double& operator[](const ClickPattern& p) { return values_[p.index()]; }
  double at(std::size_t canonical_index) const { return values_.at(canonical_index); }
  double& at(std::size_t canonical_index) { return values_.at(canonical_index); }

  const std::array<double, kNumPatterns>& values() const noexcept { return values_; }

  double total() const;

  /// Largest |a - b| over the 16 entries.
  double max_abs_difference(const ProbabilityTable& other) const;

  /// Table for the party-exchanged experiment: entry(p) = this(p.swapped()).
  ProbabilityTable party_swapped() const;

  /// Values in [-tolerance, 0) are set to 0 and (1, 1 + tolerance] to 1.
  /// Anything further out throws NumericError.
  ProbabilityTable clamped(double tolerance = 1e-12) const;

 private:
  std::array<double, kNumPatterns> values_;
};

}  // namespace hbepp

#endif  // HBEPP_CLICK_PATTERN_HPP
