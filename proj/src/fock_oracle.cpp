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

#include <bit>
#include <cmath>
#include <string>

#include "hbepp/errors.hpp"
#include "hbepp/kernels.hpp"

namespace hbepp::fock {

PartyBasis::PartyBasis(int n_max) : n_max_(n_max) {
  if (n_max < 0) throw DomainError("n_max must be >= 0, got " + std::to_string(n_max));
  size_ = block_offset(n_max + 1);
  first_.resize(size_);
  second_.resize(size_);
  for (int total = 0; total <= n_max; ++total) {
    for (int second = 0; second <= total; ++second) {
      const std::size_t i = index(total - second, second);
      first_[i] = total - second;
      second_[i] = second;
    }
  }
}

double JointArray::at(int n1p, int n1m, int n2p, int n2m) const {
  if (n1p < 0 || n1m < 0 || n2p < 0 || n2m < 0) return 0.0;
  if (n1p + n1m > n_max() || n2p + n2m > n_max()) return 0.0;
  return (*this)(basis_.index(n1p, n1m), basis_.index(n2p, n2m));
}

double JointArray::sum() const {
  double s = 0.0;
  for (double v : data_) s += v;
  return s;
}

double JointArray::sum_of_squares() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return s;
}

PairState build_state(double g, int n_max) {
  if (!(g >= 0.0 && g < 1.0)) {
    throw DomainError("nonlinear gain must lie in [0,1), got " + std::to_string(g));
  }
  PairState state{JointArray(n_max)};
  const PartyBasis& basis = state.amplitudes.basis();

  // (a1H^+ a2V^+ - a1V^+ a2H^+)^n |0>
  //   = sum_k C(n,k) (-1)^k (a1H^+)^(n-k) (a1V^+)^k (a2H^+)^k (a2V^+)^(n-k) |0>
  //   = sum_k C(n,k) (-1)^k (n-k)! k! |n-k, k; k, n-k>,
  // using (a^+)^m |0> = sqrt(m!) |m> on each of the four modes.
  std::vector<double> factorial(n_max + 1, 1.0);
  for (int i = 1; i <= n_max; ++i) factorial[i] = factorial[i - 1] * i;
  const double weight0 = 1.0 - g * g;
  for (int n = 0; n <= n_max; ++n) {
    const double prefactor = weight0 * std::sqrt(n + 1.0) * std::pow(g, n) /
                             (factorial[n] * std::sqrt(n + 1.0));
    for (int k = 0; k <= n; ++k) {
      const double binom = factorial[n] / (factorial[k] * factorial[n - k]);
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      const double amp = prefactor * binom * sign * factorial[n - k] * factorial[k];
      state.amplitudes(basis.index(n - k, k), basis.index(k, n - k)) = amp;
    }
  }
  return state;
}

PairState rotate_modes(const PairState& state, double theta1, double theta2) {
  const int n_max = state.amplitudes.n_max();
  return parallel::rotate(state, PartyRotation(n_max, theta1), PartyRotation(n_max, theta2));
}

JointPhotonDistribution photon_distribution(const PairState& state) {
  JointPhotonDistribution dist{JointArray(state.amplitudes.n_max())};
  const auto& amp = state.amplitudes.data();
  auto& mass = dist.mass.data();
  for (std::size_t i = 0; i < amp.size(); ++i) mass[i] = amp[i] * amp[i];
  return dist;
}

JointPhotonDistribution apply_loss(const JointPhotonDistribution& dist, double tau1, double tau2) {
  if (!(tau1 > 0.0 && tau1 <= 1.0) || !(tau2 > 0.0 && tau2 <= 1.0)) {
    throw DomainError("transmittances must lie in (0,1]");
  }
  const int n_max = dist.mass.n_max();
  return parallel::thin(dist, ThinningWeights(n_max, tau1), ThinningWeights(n_max, tau2));
}

ProbabilityTable click_probabilities(const JointPhotonDistribution& dist, double dark_count) {
  if (!(dark_count >= 0.0 && dark_count < 1.0)) {
    throw DomainError("dark count must lie in [0,1), got " + std::to_string(dark_count));
  }
  const auto empty = parallel::empty_mode_masses(dist);
  ProbabilityTable table;
  for (unsigned clicks = 0; clicks < kNumPatterns; ++clicks) {
    double p = 0.0;
    for (unsigned e = 0; e < kNumPatterns; ++e) {
      // Occupied modes always click, so they must all be in `clicks`.
      const unsigned occupied = kAllModes & ~e;
      if ((occupied & ~clicks) != 0 || empty[e] == 0.0) continue;
      const int dark = std::popcount(e & clicks);
      const int quiet = std::popcount(e & ~clicks & kAllModes);
      p += empty[e] * std::pow(dark_count, dark) * std::pow(1.0 - dark_count, quiet);
    }
    table[ClickPattern::from_mask(static_cast<ModeSet>(clicks))] = p;
  }
  return table;
}

double truncation_error_bound(double g, int n_max) {
  if (!(g >= 0.0 && g < 1.0)) {
    throw DomainError("nonlinear gain must lie in [0,1), got " + std::to_string(g));
  }
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  const double x = g * g;
  const double xn1 = std::pow(x, n_max + 1);
  return (n_max + 2.0) * xn1 - (n_max + 1.0) * xn1 * x;
}

ProbabilityTable oracle_probabilities(const SourceParams& source, const ChannelParams& channel,
                                      const MeasurementAngles& angles, int n_max) {
  const PairState rotated =
      rotate_modes(build_state(source.gain(), n_max), angles.theta1, angles.theta2);
  return click_probabilities(apply_loss(photon_distribution(rotated), channel.tau1(), channel.tau2()),
                             channel.dark_count());
}

}  // namespace hbepp::fock
