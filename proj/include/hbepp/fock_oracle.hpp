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

// Brute-force click statistics in a truncated Fock space.
//
// Pipeline: build the pair state in the H/V number basis, rotate each party
// into its analyzer basis (amplitude level), square to a joint photon-number
// distribution, thin every mode binomially for channel loss, and fold the
// result through four threshold detectors with dark counts.
//
// Working on the diagonal after the rotation is exact. A pure-loss channel
// maps |n><m| to operators with photon-number difference n-m, so the output
// diagonal depends only on the input diagonal. The loss is polarization
// independent, so it commutes with the analyzer rotation and may be applied
// in the rotated basis. Threshold detection is diagonal in that same basis.

#ifndef HBEPP_FOCK_ORACLE_HPP
#define HBEPP_FOCK_ORACLE_HPP

#include <cstddef>
#include <vector>

#include "hbepp/click_pattern.hpp"
#include "hbepp/params.hpp"

namespace hbepp::fock {

inline constexpr int kDefaultMaxPairs = 40;

/// Occupations (first, second) of one party's two polarization modes with
/// first + second <= n_max, grouped by total photon number.
class PartyBasis {
 public:
  explicit PartyBasis(int n_max);

  int n_max() const noexcept { return n_max_; }
  std::size_t size() const noexcept { return size_; }

  static std::size_t block_offset(int total) {
    return static_cast<std::size_t>(total) * static_cast<std::size_t>(total + 1) / 2;
  }
  std::size_t index(int first, int second) const {
    return block_offset(first + second) + static_cast<std::size_t>(second);
  }
  int first(std::size_t i) const noexcept { return first_[i]; }
  int second(std::size_t i) const noexcept { return second_[i]; }

 private:
  int n_max_;
  std::size_t size_;
  std::vector<int> first_;
  std::vector<int> second_;
};

/// Dense real matrix over (Alice occupation, Bob occupation), row = Alice.
/// Used both for amplitudes and for probability masses.
class JointArray {
 public:
  explicit JointArray(int n_max) : basis_(n_max), data_(basis_.size() * basis_.size(), 0.0) {}

  const PartyBasis& basis() const noexcept { return basis_; }
  int n_max() const noexcept { return basis_.n_max(); }
  std::size_t dim() const noexcept { return basis_.size(); }

  double& operator()(std::size_t alice, std::size_t bob) { return data_[alice * dim() + bob]; }
  double operator()(std::size_t alice, std::size_t bob) const { return data_[alice * dim() + bob]; }

  /// Entry at occupations (n1+, n1-, n2+, n2-); 0 outside the truncation.
  double at(int n1p, int n1m, int n2p, int n2m) const;

  std::vector<double>& data() noexcept { return data_; }
  const std::vector<double>& data() const noexcept { return data_; }

  /// Sum of entries (or of squares).
  double sum() const;
  double sum_of_squares() const;

 private:
  PartyBasis basis_;
  std::vector<double> data_;
};

/// Real amplitudes of the pair state. First/second mode is H/V before
/// rotation and theta+/theta- after.
struct PairState {
  JointArray amplitudes;
};

/// Photon-number probability mass over (n1+, n1-, n2+, n2-).
struct JointPhotonDistribution {
  JointArray mass;
};

/// Pair state sum_n (1-g^2) sqrt(n+1) g^n |psi_n> for n <= n_max, with
/// |psi_n> the normalized n-th power of (a1H^+ a2V^+ - a1V^+ a2H^+) on vacuum.
/// Throws DomainError for g outside [0,1) or n_max < 0.
PairState build_state(double g, int n_max);

/// Rotates Alice's modes to (theta1+, theta1-) and Bob's to (theta2+, theta2-),
/// where a_{theta+}^+ = cos a_H^+ + sin a_V^+ and a_{theta-}^+ = -sin a_H^+ + cos a_V^+.
PairState rotate_modes(const PairState& state, double theta1, double theta2);

/// |amplitude|^2.
JointPhotonDistribution photon_distribution(const PairState& state);

/// Binomial thinning of every mode: tau1 on Alice's modes, tau2 on Bob's.
JointPhotonDistribution apply_loss(const JointPhotonDistribution& dist, double tau1, double tau2);

/// Threshold detection: a mode holding n >= 1 photons clicks surely, an empty
/// mode clicks with probability dark_count, detectors independent.
ProbabilityTable click_probabilities(const JointPhotonDistribution& dist, double dark_count);

/// 1 - (1-g^2)^2 sum_{n<=n_max} (n+1) g^(2n), in closed form.
double truncation_error_bound(double g, int n_max);

/// Full pipeline.
ProbabilityTable oracle_probabilities(const SourceParams& source, const ChannelParams& channel,
                                      const MeasurementAngles& angles,
                                      int n_max = kDefaultMaxPairs);

}  // namespace hbepp::fock

#endif  // HBEPP_FOCK_ORACLE_HPP
