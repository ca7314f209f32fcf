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
#include <cstdint>

#include "qwalk/walk_state.hpp"

namespace qwalk {

/// Default cap on (position, last direction) cells held by the classical DPs.
inline constexpr double kMaxDpCells = 1e8;

/// Classical walk with memory: repeat the previous direction with probability
/// p_same, switch to each of the other 2d - 1 directions with p_other.
struct CRWMParams {
  std::size_t dim = 2;
  double p_same = 0.25;

  CRWMParams(std::size_t dim, double p_same);
  double p_other() const noexcept {
    return (1.0 - p_same) / static_cast<double>(2 * dim - 1);
  }
};

/// Exact n-step distribution of i.i.d. uniform unit steps.
Distribution crw_distribution(std::size_t dim, std::size_t n, double max_cells = kMaxDpCells);

/// Exact n-step distribution of the walk with memory; the first direction is
/// uniform over all 2d choices.
Distribution crwm_distribution(const CRWMParams& params, std::size_t n,
                               double max_cells = kMaxDpCells);

/// E|x_n|^2 of the memoryless walk, which is n in every dimension.
double crw_dispersion(std::size_t dim, std::size_t n);

/// E|x_n|^2 of the walk with memory from its first-moment recursion; O(n) and
/// dimension independent. Agrees with second_moment(crwm_distribution(...)).
double crwm_dispersion(const CRWMParams& params, std::size_t n);

/// One sampled endpoint of the walk with memory.
Position sample_crwm(const CRWMParams& params, std::size_t n, std::uint64_t seed);

}  // namespace qwalk
