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

// Serial vs OpenMP timings of the data-parallel kernels.
// Usage: hbepp_bench [n_max=40] [grid_points=20000] [repeats=5]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "hbepp/kernels.hpp"

namespace {

using namespace hbepp;

// Best-of-`repeats` wall time in milliseconds.
template <class F>
double time_ms(int repeats, F&& f) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto start = std::chrono::steady_clock::now();
    f();
    const auto stop = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(stop - start).count());
  }
  return best;
}

void row(const char* name, double serial_ms, double parallel_ms, bool identical) {
  std::printf("%-22s %12.3f %12.3f %9.2fx   %s\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int n_max = argc > 1 ? std::atoi(argv[1]) : 40;
  const std::size_t points = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 20000;
  const int repeats = argc > 3 ? std::atoi(argv[3]) : 5;

  std::printf("threads = %d, n_max = %d, grid points = %zu, best of %d\n", omp_get_max_threads(),
              n_max, points, repeats);
  std::printf("%-22s %12s %12s %10s   %s\n", "kernel", "serial ms", "parallel ms", "speedup",
              "results");

  const fock::PairState state = fock::build_state(0.6, n_max);
  const fock::PartyRotation ra(n_max, 0.7);
  const fock::PartyRotation rb(n_max, 0.1);
  fock::PairState rs{fock::JointArray(n_max)};
  fock::PairState rp{fock::JointArray(n_max)};
  const double rot_s = time_ms(repeats, [&] { rs = serial::rotate(state, ra, rb); });
  const double rot_p = time_ms(repeats, [&] { rp = parallel::rotate(state, ra, rb); });
  row("rotate", rot_s, rot_p, rs.amplitudes.data() == rp.amplitudes.data());

  const auto dist = fock::photon_distribution(rs);
  const fock::ThinningWeights wa(n_max, 0.7);
  const fock::ThinningWeights wb(n_max, 0.01);
  fock::JointPhotonDistribution ts{fock::JointArray(n_max)};
  fock::JointPhotonDistribution tp{fock::JointArray(n_max)};
  const double thin_s = time_ms(repeats, [&] { ts = serial::thin(dist, wa, wb); });
  const double thin_p = time_ms(repeats, [&] { tp = parallel::thin(dist, wa, wb); });
  row("thin", thin_s, thin_p, ts.mass.data() == tp.mass.data());

  std::array<double, kNumPatterns> ms{};
  std::array<double, kNumPatterns> mp{};
  const double em_s = time_ms(repeats, [&] { ms = serial::empty_mode_masses(ts); });
  const double em_p = time_ms(repeats, [&] { mp = parallel::empty_mode_masses(ts); });
  row("empty_mode_masses", em_s, em_p, ms == mp);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ScenarioPoint> grid;
  grid.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid.push_back({SourceParams::from_gain(0.9 * u(rng)),
                    ChannelParams::from_transmittance(0.01 + 0.99 * u(rng), 0.01 + 0.99 * u(rng),
                                                      1e-3 * u(rng)),
                    {3.0 * u(rng), 3.0 * u(rng)}});
  }
  std::vector<ProbabilityTable> es;
  std::vector<ProbabilityTable> ep;
  const double ev_s = time_ms(repeats, [&] { es = serial::evaluate_tables(grid); });
  const double ev_p = time_ms(repeats, [&] { ep = parallel::evaluate_tables(grid); });
  bool same = es.size() == ep.size();
  for (std::size_t i = 0; same && i < es.size(); ++i) same = es[i].values() == ep[i].values();
  row("evaluate_tables", ev_s, ev_p, same);
  return 0;
}
