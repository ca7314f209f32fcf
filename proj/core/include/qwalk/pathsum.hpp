// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qwalk/coins.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk {

/// Direction sequence (a_1, ..., a_n) listed in operator-product order:
/// steps.front() is the most recent step (it labels the final coin state)
/// and steps.back() is the first step taken.
struct DirectionPath {
  std::vector<Direction> steps;

  std::size_t length() const noexcept { return steps.size(); }
  Position endpoint(std::size_t dim) const;
};

/// Default cap on |D|^n for the exhaustive path enumerators.
inline constexpr double kMaxEnumeratedPaths = 1e7;

/// prod_{j<n} [t + (r - t) delta(a_j, a_{j+1})]; 1 for a single step.
Amplitude xi_grover(const DirectionPath& path, Amplitude r, Amplitude t);

/// prod_{j<n} (|D| delta(a_j, a_{j+1}) - 2).
double xi0_grover(const DirectionPath& path, std::size_t coin_size);

/// n phase-free Grover steps from |0>|s>, summed over all |D|^n direction
/// paths with weight (-1)^{n+1} Xi_0 / |D|^{(2n-1)/2}. Requires |D| >= 4.
WalkState pure_qw_amplitudes(std::size_t dim, std::size_t n);

/// Lambda_k C with Lambda_k = sum_a exp(-i k.e_a) |a><a|.
CoinMatrix momentum_matrix(std::span<const double> k, const CoinMatrix& coin);

/// Inverts the lattice Fourier transform of (Lambda_k C)^n |chi> on a uniform
/// grid of `grid` points per axis in [-pi, pi). Exact when grid > 2n.
WalkState momentum_space_state(std::size_t dim, std::size_t n, const CoinMatrix& coin,
                               std::size_t grid, std::span<const Amplitude> initial_coin = {});

struct Lemma1Coefficients {
  double p = 0.0;
  double q = 0.0;
};

/// (P_a C_G)^n = p_n |a><s| + q_n P_a.
Lemma1Coefficients lemma1_coeffs(std::size_t n, std::size_t coin_size);

/// Phase-averaged position distribution of the walk with coin G_{r,t} and
/// uniform phases, computed as a DP over (position, last direction): first
/// step weight K, then |r|^2 to repeat a direction and |t|^2 to turn.
Distribution mean_dist_grover(const GroverParams& params, std::size_t n);

/// Same quantity by enumerating all |D|^n paths and summing K |Xi|^2.
Distribution mean_dist_grover_bruteforce(const GroverParams& params, std::size_t n,
                                         double max_paths = kMaxEnumeratedPaths);

/// Probability at x after the walk driven by the given per-step phases
/// (phases[k] acts at step k+1), by coherent path summation. The coin state is
/// traced out. `initial_coin` empty means |s>.
double per_realization_prob(const CoinMatrix& coin, std::span<const PhaseVector> phases,
                            const Position& x, std::span<const Amplitude> initial_coin = {},
                            double max_paths = kMaxEnumeratedPaths);

double per_realization_prob(const GroverParams& params, std::span<const PhaseVector> phases,
                            const Position& x);

/// Path weight of the Fourier-coin walk. Plain (initial coin |s>): zero unless
/// the first step taken is direction 0, otherwise |D|^{-(n-1)/2} times
/// exp(2 pi i sum_j a_j a_{j+1} / |D|). Symmetrized (initial coin F^dagger|s>):
/// |D|^{-n/2} times the same phase.
Amplitude xi_fourier(const DirectionPath& path, std::size_t coin_size, bool symmetrized);

/// Phase-averaged distribution of the Fourier-coin walk, by DP.
Distribution mean_dist_fourier(std::size_t dim, std::size_t n, bool symmetrized);

/// Same by enumerating paths and summing |xi_fourier|^2.
Distribution mean_dist_fourier_bruteforce(std::size_t dim, std::size_t n, bool symmetrized,
                                          double max_paths = kMaxEnumeratedPaths);

/// F^dagger |s>, the coin state that makes the Fourier walk's first step uniform.
std::vector<Amplitude> symmetrized_fourier_coin_state(std::size_t coin_size);

}  // namespace qwalk
