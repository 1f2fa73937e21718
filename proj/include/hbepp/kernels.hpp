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

// Data-parallel kernels. Every kernel exists twice: `serial::` is the plain
// reference loop, `parallel::` the OpenMP version. Both accumulate in the same
// order (per-row partials folded serially), so their results are bitwise
// identical and independent of the thread count.

#ifndef HBEPP_KERNELS_HPP
#define HBEPP_KERNELS_HPP

#include <array>
#include <cstddef>
#include <exception>
#include <optional>
#include <span>
#include <type_traits>
#include <vector>

#include "hbepp/click_pattern.hpp"
#include "hbepp/fock_oracle.hpp"
#include "hbepp/params.hpp"

namespace hbepp {

/// One point of a parameter grid.
struct ScenarioPoint {
  SourceParams source;
  ChannelParams channel;
  MeasurementAngles angles;
};

namespace fock {

/// Fock-space representation of a polarization rotation by theta for one
/// party, block diagonal in the total photon number. Block N is an
/// (N+1)x(N+1) row-major matrix <out| U |in>, both indexed by the occupation
/// of the second mode.
class PartyRotation {
 public:
  PartyRotation(int n_max, double theta);

  int n_max() const noexcept { return static_cast<int>(blocks_.size()) - 1; }
  const std::vector<double>& block(int total) const { return blocks_[total]; }

 private:
  std::vector<std::vector<double>> blocks_;
};

/// Binomial survival weights W[n][k] = C(n,k) tau^k (1-tau)^(n-k), k <= n <= n_max.
class ThinningWeights {
 public:
  ThinningWeights(int n_max, double tau);
  double operator()(int n, int k) const { return w_[static_cast<std::size_t>(n) * stride_ + k]; }

 private:
  std::size_t stride_;
  std::vector<double> w_;
};

}  // namespace fock

namespace serial {

fock::PairState rotate(const fock::PairState& state, const fock::PartyRotation& alice,
                       const fock::PartyRotation& bob);
fock::JointPhotonDistribution thin(const fock::JointPhotonDistribution& dist,
                                   const fock::ThinningWeights& alice,
                                   const fock::ThinningWeights& bob);
/// Mass whose empty modes are exactly the mask (bit set = mode holds no photon).
std::array<double, kNumPatterns> empty_mode_masses(const fock::JointPhotonDistribution& dist);
std::vector<ProbabilityTable> evaluate_tables(std::span<const ScenarioPoint> points);

}  // namespace serial

namespace parallel {

fock::PairState rotate(const fock::PairState& state, const fock::PartyRotation& alice,
                       const fock::PartyRotation& bob);
fock::JointPhotonDistribution thin(const fock::JointPhotonDistribution& dist,
                                   const fock::ThinningWeights& alice,
                                   const fock::ThinningWeights& bob);
std::array<double, kNumPatterns> empty_mode_masses(const fock::JointPhotonDistribution& dist);
std::vector<ProbabilityTable> evaluate_tables(std::span<const ScenarioPoint> points);

/// out[i] = f(i) for i < n, evaluated by an OpenMP loop. The first exception
/// (lowest index) is rethrown after the loop.
template <class F>
auto generate(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using T = std::invoke_result_t<F&, std::size_t>;
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    try {
      slots[i].emplace(f(static_cast<std::size_t>(i)));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace parallel

namespace serial {

template <class F>
auto generate(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  std::vector<std::invoke_result_t<F&, std::size_t>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
  return out;
}

}  // namespace serial

}  // namespace hbepp

#endif  // HBEPP_KERNELS_HPP
