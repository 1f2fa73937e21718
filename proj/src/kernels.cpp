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

#include "hbepp/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "hbepp/analytic.hpp"
#include "hbepp/errors.hpp"

namespace hbepp {
namespace fock {

PartyRotation::PartyRotation(int n_max, double theta) : blocks_(n_max + 1) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // Column q of block N is the image of |N-q, q>_{HV}, written over |N-j, j>_{+-}.
  // Built by repeated creation operators:
  //   a_H^+ = c a_+^+ - s a_-^+,   a_V^+ = s a_+^+ + c a_-^+.
  blocks_[0] = {1.0};
  for (int total = 1; total <= n_max; ++total) {
    const int n = total + 1;
    const int prev_n = total;
    const std::vector<double>& prev = blocks_[total - 1];
    std::vector<double>& cur = blocks_[total];
    cur.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int q = 0; q <= total; ++q) {
      const int p = total - q;
      // Raise from |p-1, q> with a_H^+ when possible, otherwise from |0, q-1> with a_V^+.
      const bool use_h = p > 0;
      const int src = use_h ? q : q - 1;
      const double plus_coeff = use_h ? c : s;
      const double minus_coeff = use_h ? -s : c;
      const double norm = 1.0 / std::sqrt(static_cast<double>(use_h ? p : q));
      for (int j = 0; j < prev_n; ++j) {
        const double amp = prev[static_cast<std::size_t>(j) * prev_n + src];
        if (amp == 0.0) continue;
        // a_+^+ |total-1-j, j> = sqrt(total-j) |total-j, j>
        cur[static_cast<std::size_t>(j) * n + q] +=
            norm * plus_coeff * std::sqrt(static_cast<double>(total - j)) * amp;
        // a_-^+ |total-1-j, j> = sqrt(j+1) |total-1-j, j+1>
        cur[static_cast<std::size_t>(j + 1) * n + q] +=
            norm * minus_coeff * std::sqrt(static_cast<double>(j + 1)) * amp;
      }
    }
  }
}

ThinningWeights::ThinningWeights(int n_max, double tau)
    : stride_(static_cast<std::size_t>(n_max) + 1), w_(stride_ * stride_, 0.0) {
  w_[0] = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double stay = k < n ? (1.0 - tau) * w_[(n - 1) * stride_ + k] : 0.0;
      const double pass = k > 0 ? tau * w_[(n - 1) * stride_ + k - 1] : 0.0;
      w_[n * stride_ + k] = stay + pass;
    }
  }
}

}  // namespace fock

namespace {

using fock::JointArray;
using fock::PartyBasis;

// Output Alice row `row` of (R_A (x) R_B) applied to the amplitudes.
void rotate_row(const JointArray& in, const fock::PartyRotation& alice,
                const fock::PartyRotation& bob, std::size_t row, JointArray& out) {
  const PartyBasis& basis = in.basis();
  const int total_a = basis.first(row) + basis.second(row);
  const int ja = basis.second(row);
  const int na = total_a + 1;
  const std::vector<double>& ra = alice.block(total_a);
  const std::size_t a_off = PartyBasis::block_offset(total_a);
  std::vector<double> tmp;
  for (int total_b = 0; total_b <= basis.n_max(); ++total_b) {
    const int nb = total_b + 1;
    const std::size_t b_off = PartyBasis::block_offset(total_b);
    tmp.assign(nb, 0.0);
    bool any = false;
    for (int ia = 0; ia < na; ++ia) {
      const double r = ra[static_cast<std::size_t>(ja) * na + ia];
      if (r == 0.0) continue;
      for (int ib = 0; ib < nb; ++ib) {
        const double v = in(a_off + ia, b_off + ib);
        if (v != 0.0) {
          tmp[ib] += r * v;
          any = true;
        }
      }
    }
    if (!any) continue;
    const std::vector<double>& rb = bob.block(total_b);
    for (int jb = 0; jb < nb; ++jb) {
      double acc = 0.0;
      for (int ib = 0; ib < nb; ++ib) acc += rb[static_cast<std::size_t>(jb) * nb + ib] * tmp[ib];
      out(row, b_off + jb) = acc;
    }
  }
}

void axpy_row(double w, const JointArray& in, std::size_t src_row, JointArray& out,
              std::size_t dst_row) {
  const std::size_t dim = in.dim();
  const double* src = in.data().data() + src_row * dim;
  double* dst = out.data().data() + dst_row * dim;
  for (std::size_t c = 0; c < dim; ++c) dst[c] += w * src[c];
}

// Alice thinning of the first mode, for output row `row` = (f', s).
void thin_alice_first_row(const JointArray& in, const fock::ThinningWeights& w, std::size_t row,
                          JointArray& out) {
  const PartyBasis& basis = in.basis();
  const int fp = basis.first(row);
  const int s = basis.second(row);
  for (int f = fp; f + s <= basis.n_max(); ++f) {
    axpy_row(w(f, fp), in, basis.index(f, s), out, row);
  }
}

// Alice thinning of the second mode, for output row `row` = (f, s').
void thin_alice_second_row(const JointArray& in, const fock::ThinningWeights& w, std::size_t row,
                           JointArray& out) {
  const PartyBasis& basis = in.basis();
  const int f = basis.first(row);
  const int sp = basis.second(row);
  for (int s = sp; f + s <= basis.n_max(); ++s) {
    axpy_row(w(s, sp), in, basis.index(f, s), out, row);
  }
}

// Bob thinning of both modes within a single row, in place.
void thin_bob_row(JointArray& arr, const fock::ThinningWeights& w, std::size_t row,
                  std::vector<double>& scratch) {
  const PartyBasis& basis = arr.basis();
  const std::size_t dim = arr.dim();
  double* x = arr.data().data() + row * dim;
  scratch.assign(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    const double v = x[i];
    if (v == 0.0) continue;
    const int f = basis.first(i);
    const int s = basis.second(i);
    for (int fp = 0; fp <= f; ++fp) scratch[basis.index(fp, s)] += w(f, fp) * v;
  }
  std::fill(x, x + dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    const double v = scratch[i];
    if (v == 0.0) continue;
    const int f = basis.first(i);
    const int s = basis.second(i);
    for (int sp = 0; sp <= s; ++sp) x[basis.index(f, sp)] += w(s, sp) * v;
  }
}

unsigned empty_mask(const PartyBasis& basis, std::size_t i) {
  return (basis.first(i) == 0 ? 1u : 0u) | (basis.second(i) == 0 ? 2u : 0u);
}

// Per-row masses keyed by Bob's empty-mode mask.
std::array<double, 4> row_empty_masses(const JointArray& mass, std::size_t row) {
  std::array<double, 4> acc{};
  const PartyBasis& basis = mass.basis();
  for (std::size_t col = 0; col < mass.dim(); ++col) acc[empty_mask(basis, col)] += mass(row, col);
  return acc;
}

std::array<double, kNumPatterns> fold_rows(const JointArray& mass,
                                           const std::vector<std::array<double, 4>>& rows) {
  std::array<double, kNumPatterns> out{};
  for (std::size_t row = 0; row < rows.size(); ++row) {
    const unsigned alice = empty_mask(mass.basis(), row);
    for (unsigned bob = 0; bob < 4; ++bob) out[alice | (bob << 2)] += rows[row][bob];
  }
  return out;
}

}  // namespace

namespace serial {

fock::PairState rotate(const fock::PairState& state, const fock::PartyRotation& alice,
                       const fock::PartyRotation& bob) {
  fock::PairState out{JointArray(state.amplitudes.n_max())};
  for (std::size_t row = 0; row < state.amplitudes.dim(); ++row) {
    rotate_row(state.amplitudes, alice, bob, row, out.amplitudes);
  }
  return out;
}

fock::JointPhotonDistribution thin(const fock::JointPhotonDistribution& dist,
                                   const fock::ThinningWeights& alice,
                                   const fock::ThinningWeights& bob) {
  const std::size_t dim = dist.mass.dim();
  JointArray mid(dist.mass.n_max());
  for (std::size_t row = 0; row < dim; ++row) thin_alice_first_row(dist.mass, alice, row, mid);
  fock::JointPhotonDistribution out{JointArray(dist.mass.n_max())};
  for (std::size_t row = 0; row < dim; ++row) thin_alice_second_row(mid, alice, row, out.mass);
  std::vector<double> scratch;
  for (std::size_t row = 0; row < dim; ++row) thin_bob_row(out.mass, bob, row, scratch);
  return out;
}

std::array<double, kNumPatterns> empty_mode_masses(const fock::JointPhotonDistribution& dist) {
  std::vector<std::array<double, 4>> rows(dist.mass.dim());
  for (std::size_t row = 0; row < rows.size(); ++row) rows[row] = row_empty_masses(dist.mass, row);
  return fold_rows(dist.mass, rows);
}

std::vector<ProbabilityTable> evaluate_tables(std::span<const ScenarioPoint> points) {
  return generate(points.size(), [&](std::size_t i) {
    return outcome_probabilities(points[i].source, points[i].channel, points[i].angles);
  });
}

}  // namespace serial

namespace parallel {

fock::PairState rotate(const fock::PairState& state, const fock::PartyRotation& alice,
                       const fock::PartyRotation& bob) {
  fock::PairState out{JointArray(state.amplitudes.n_max())};
  const auto dim = static_cast<long long>(state.amplitudes.dim());
#pragma omp parallel for schedule(dynamic)
  for (long long row = 0; row < dim; ++row) {
    rotate_row(state.amplitudes, alice, bob, static_cast<std::size_t>(row), out.amplitudes);
  }
  return out;
}

fock::JointPhotonDistribution thin(const fock::JointPhotonDistribution& dist,
                                   const fock::ThinningWeights& alice,
                                   const fock::ThinningWeights& bob) {
  const auto dim = static_cast<long long>(dist.mass.dim());
  JointArray mid(dist.mass.n_max());
  fock::JointPhotonDistribution out{JointArray(dist.mass.n_max())};
#pragma omp parallel
  {
#pragma omp for schedule(dynamic)
    for (long long row = 0; row < dim; ++row) {
      thin_alice_first_row(dist.mass, alice, static_cast<std::size_t>(row), mid);
    }
#pragma omp for schedule(dynamic)
    for (long long row = 0; row < dim; ++row) {
      thin_alice_second_row(mid, alice, static_cast<std::size_t>(row), out.mass);
    }
    std::vector<double> scratch;
#pragma omp for schedule(dynamic)
    for (long long row = 0; row < dim; ++row) {
      thin_bob_row(out.mass, bob, static_cast<std::size_t>(row), scratch);
    }
  }
  return out;
}

std::array<double, kNumPatterns> empty_mode_masses(const fock::JointPhotonDistribution& dist) {
  std::vector<std::array<double, 4>> rows(dist.mass.dim());
  const auto dim = static_cast<long long>(rows.size());
#pragma omp parallel for schedule(static)
  for (long long row = 0; row < dim; ++row) {
    rows[row] = row_empty_masses(dist.mass, static_cast<std::size_t>(row));
  }
  return fold_rows(dist.mass, rows);
}

std::vector<ProbabilityTable> evaluate_tables(std::span<const ScenarioPoint> points) {
  return generate(points.size(), [&](std::size_t i) {
    return outcome_probabilities(points[i].source, points[i].channel, points[i].angles);
  });
}

}  // namespace parallel
}  // namespace hbepp
