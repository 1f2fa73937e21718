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

#include "hbepp/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hbepp/errors.hpp"

namespace hbepp {

double gain_from_mean_photon(double mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw DomainError("mean photon number must be finite and >= 0, got " + std::to_string(mu));
  }
  return std::sqrt(mu / (1.0 + mu));
}

double mean_photon_from_gain(double g) {
  const double g2 = g * g;
  return g2 / (1.0 - g2);
}

double transmittance_from_db(double loss_db) {
  if (!(loss_db >= 0.0) || !std::isfinite(loss_db)) {
    throw DomainError("loss in dB must be finite and >= 0, got " + std::to_string(loss_db));
  }
  return std::pow(10.0, -loss_db / 10.0);
}

double db_from_transmittance(double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw DomainError("transmittance must lie in (0,1], got " + std::to_string(tau));
  }
  return -10.0 * std::log10(tau);
}

SourceParams SourceParams::from_gain(double g) {
  if (!(g >= 0.0 && g < 1.0)) {
    throw DomainError("nonlinear gain must lie in [0,1), got " + std::to_string(g));
  }
  return SourceParams(g);
}

SourceParams SourceParams::from_mean_photon(double mu) {
  return from_gain(gain_from_mean_photon(mu));
}

SourceParams SourceParams::from_squeezing(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw DomainError("squeezing must be finite and >= 0, got " + std::to_string(gamma));
  }
  return from_gain(std::tanh(gamma));
}

double SourceParams::squeezing() const noexcept { return std::atanh(g_); }

ChannelParams ChannelParams::from_transmittance(double tau1, double tau2, double dark_count) {
  if (!(tau1 > 0.0 && tau1 <= 1.0)) {
    throw DomainError("tau1 must lie in (0,1], got " + std::to_string(tau1));
  }
  if (!(tau2 > 0.0 && tau2 <= 1.0)) {
    throw DomainError("tau2 must lie in (0,1], got " + std::to_string(tau2));
  }
  if (!(dark_count >= 0.0 && dark_count < 1.0)) {
    throw DomainError("dark count must lie in [0,1), got " + std::to_string(dark_count));
  }
  return ChannelParams(tau1, tau2, dark_count);
}

ChannelParams ChannelParams::from_loss_db(double loss1_db, double loss2_db, double dark_count) {
  return from_transmittance(transmittance_from_db(loss1_db), transmittance_from_db(loss2_db),
                            dark_count);
}

MeasurementAngles MeasurementAngles::from_degrees(double theta1_deg, double theta2_deg) {
  constexpr double kDeg = std::numbers::pi / 180.0;
  return {theta1_deg * kDeg, theta2_deg * kDeg};
}

}  // namespace hbepp
