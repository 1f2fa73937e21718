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

#ifndef HBEPP_PARAMS_HPP
#define HBEPP_PARAMS_HPP

namespace hbepp {

/// Mean pair number per temporal mode mu -> nonlinear gain g = sqrt(mu/(1+mu)).
/// Throws DomainError for negative or non-finite mu.
double gain_from_mean_photon(double mu);

/// mu = g^2/(1-g^2) = sinh^2(artanh g).
double mean_photon_from_gain(double g);

/// Attenuation in dB -> transmittance 10^(-dB/10). Throws DomainError for dB < 0.
double transmittance_from_db(double loss_db);

/// Transmittance -> attenuation -10 log10(tau). Throws DomainError outside (0,1].
double db_from_transmittance(double tau);

/// Pair source, parameterized by the nonlinear gain g = tanh(gamma).
class SourceParams {
 public:
  static SourceParams from_gain(double g);
  static SourceParams from_mean_photon(double mu);
  /// gamma is the squeezing strength kappa*T_int.
  static SourceParams from_squeezing(double gamma);

  double gain() const noexcept { return g_; }
  double mean_photon_number() const noexcept { return mean_photon_from_gain(g_); }
  double squeezing() const noexcept;

  friend bool operator==(const SourceParams&, const SourceParams&) = default;

 private:
  explicit SourceParams(double g) : g_(g) {}
  double g_;
};

/// Alice/Bob arm transmittances plus per-detector dark-click probability.
/// Detector efficiency is folded into the transmittances.
class ChannelParams {
 public:
  static ChannelParams from_transmittance(double tau1, double tau2, double dark_count = 0.0);
  static ChannelParams from_loss_db(double loss1_db, double loss2_db, double dark_count = 0.0);

  double tau1() const noexcept { return tau1_; }
  double tau2() const noexcept { return tau2_; }
  double dark_count() const noexcept { return dark_count_; }
  double loss1_db() const { return db_from_transmittance(tau1_); }
  double loss2_db() const { return db_from_transmittance(tau2_); }

  ChannelParams with_dark_count(double d) const { return from_transmittance(tau1_, tau2_, d); }
  /// Arms exchanged, i.e. Alice <-> Bob.
  ChannelParams swapped() const { return from_transmittance(tau2_, tau1_, dark_count_); }

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;

 private:
  ChannelParams(double tau1, double tau2, double d) : tau1_(tau1), tau2_(tau2), dark_count_(d) {}
  double tau1_;
  double tau2_;
  double dark_count_;
};

/// Polarization analyzer angles in radians.
struct MeasurementAngles {
  double theta1 = 0.0;
  double theta2 = 0.0;

  static MeasurementAngles relative_angle(double theta) { return {theta, 0.0}; }
  static MeasurementAngles from_degrees(double theta1_deg, double theta2_deg);

  double relative() const noexcept { return theta1 - theta2; }

  friend bool operator==(const MeasurementAngles&, const MeasurementAngles&) = default;
};

}  // namespace hbepp

#endif  // HBEPP_PARAMS_HPP
