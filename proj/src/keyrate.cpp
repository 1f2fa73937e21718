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

#include "hbepp/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hbepp/analytic.hpp"
#include "hbepp/errors.hpp"
#include "hbepp/kernels.hpp"

namespace hbepp {

double binary_entropy(double e) {
  if (!(e >= 0.0 && e <= 1.0)) {
    throw DomainError("binary entropy argument must lie in [0,1], got " + std::to_string(e));
  }
  if (e == 0.0 || e == 1.0) return 0.0;
  return -e * std::log2(e) - (1.0 - e) * std::log2(1.0 - e);
}

SiftResult qber_and_sift(const SourceParams& source, const ChannelParams& channel,
                         PostprocessingModel model) {
  const ProbabilityTable table = outcome_probabilities(source, channel, MeasurementAngles{});
  SiftResult r;
  r.counts = coincidences(table, model);
  const double total = r.counts.total();
  if (total == 0.0) return r;
  r.qber = (r.counts.n_pp + r.counts.n_mm) / total;
  r.sifted_rate = 0.5 * total;
  return r;
}

double secure_rate(double qber, double sifted_rate) {
  return std::max(0.0, sifted_rate * (1.0 - 2.0 * binary_entropy(qber)));
}

KeyRateReport key_rate(const SourceParams& source, const ChannelParams& channel,
                       PostprocessingModel model) {
  const SiftResult s = qber_and_sift(source, channel, model);
  return {s.qber, s.sifted_rate, secure_rate(s.qber, s.sifted_rate), source.gain(),
          source.mean_photon_number()};
}

namespace {

double secure_rate_at(double g, const ChannelParams& channel, PostprocessingModel model) {
  return key_rate(SourceParams::from_gain(g), channel, model).secure_rate;
}

}  // namespace

OptimizationResult optimize_gain(const ChannelParams& channel, GainBounds bounds,
                                 const OptimizerOptions& options, PostprocessingModel model) {
  if (!(bounds.lo > 0.0 && bounds.lo < bounds.hi && bounds.hi < 1.0)) {
    throw DomainError("gain bounds must satisfy 0 < lo < hi < 1");
  }
  if (options.grid_points < 3) throw DomainError("optimizer grid needs at least 3 points");

  const auto n = static_cast<std::size_t>(options.grid_points);
  const double step = (bounds.hi - bounds.lo) / static_cast<double>(n - 1);
  const auto grid_g = [&](std::size_t i) {
    return i + 1 == n ? bounds.hi : bounds.lo + step * static_cast<double>(i);
  };
  const std::vector<double> rates =
      parallel::generate(n, [&](std::size_t i) { return secure_rate_at(grid_g(i), channel, model); });

  const auto best = static_cast<std::size_t>(std::max_element(rates.begin(), rates.end()) -
                                             rates.begin());
  OptimizationResult result;
  result.bracket_lo = grid_g(best == 0 ? 0 : best - 1);
  result.bracket_hi = grid_g(std::min(best + 1, n - 1));
  result.secure_rate_at_lo = rates[best == 0 ? 0 : best - 1];
  result.secure_rate_at_hi = rates[std::min(best + 1, n - 1)];
  if (rates[best] <= 0.0) return result;

  // Golden-section maximization on the bracket.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = result.bracket_lo;
  double b = result.bracket_hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = secure_rate_at(c, channel, model);
  double fd = secure_rate_at(d, channel, model);
  int it = 0;
  while (b - a > options.tolerance && it < options.max_iterations) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = secure_rate_at(c, channel, model);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = secure_rate_at(d, channel, model);
    }
    ++it;
  }
  double g = 0.5 * (a + b);
  double rate = secure_rate_at(g, channel, model);
  if (rate < rates[best]) {
    g = grid_g(best);
    rate = rates[best];
  }
  result.g_opt = g;
  result.mu_opt = mean_photon_from_gain(g);
  result.secure_rate_at_opt = rate;
  result.iterations = it;
  return result;
}

PassiveSweep passive_performance(double mu_fixed, const ChannelParams& channel_base,
                                 std::span<const double> loss2_db, GainBounds bounds,
                                 const OptimizerOptions& options) {
  if (!(mu_fixed > 0.0)) throw DomainError("fixed mean photon number must be > 0");
  const SourceParams fixed = SourceParams::from_mean_photon(mu_fixed);
  PassiveSweep sweep;
  sweep.mu_fixed = mu_fixed;
  sweep.points = parallel::generate(loss2_db.size(), [&](std::size_t i) {
    const ChannelParams channel =
        ChannelParams::from_transmittance(channel_base.tau1(), transmittance_from_db(loss2_db[i]),
                                          channel_base.dark_count());
    PassivePoint p;
    p.loss2_db = loss2_db[i];
    p.secure_rate_fixed = key_rate(fixed, channel).secure_rate;
    const OptimizationResult opt = optimize_gain(channel, bounds, options);
    p.secure_rate_opt = opt.secure_rate_at_opt;
    p.mu_opt = opt.mu_opt;
    if (opt.g_opt && p.secure_rate_opt > 0.0) p.ratio = p.secure_rate_fixed / p.secure_rate_opt;
    return p;
  });
  for (const PassivePoint& p : sweep.points) {
    if (p.ratio) sweep.min_ratio = sweep.min_ratio ? std::min(*sweep.min_ratio, *p.ratio) : *p.ratio;
  }
  return sweep;
}

}  // namespace hbepp
