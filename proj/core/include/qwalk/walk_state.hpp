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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qwalk/lattice.hpp"

namespace qwalk {

using Amplitude = std::complex<double>;

/// Sparse vector in H_X (x) H_D: for every stored lattice point, the full
/// |D| = 2d component coin vector.
///
/// Positions are kept as packed keys (see LatticeCodec) in strictly increasing
/// order; amplitudes are stored row-wise, coin_size() per position.
class WalkState {
 public:
  explicit WalkState(std::size_t dim);

  /// Adopts packed storage. `keys` must be strictly increasing and
  /// `amplitudes.size() == keys.size() * coin_size`. `reach` bounds the
  /// largest |coordinate| present.
  WalkState(std::size_t dim, std::vector<std::uint64_t> keys,
            std::vector<Amplitude> amplitudes, int reach);

  std::size_t dim() const noexcept { return codec_.dim(); }
  std::size_t coin_size() const noexcept { return codec_.coin_size(); }
  const LatticeCodec& codec() const noexcept { return codec_; }
  int reach() const noexcept { return reach_; }

  std::size_t num_positions() const noexcept { return keys_.size(); }
  bool empty() const noexcept { return keys_.empty(); }

  Amplitude amplitude(const Position& x, Direction a) const;
  void set_amplitude(const Position& x, Direction a, Amplitude value);

  Position position(std::size_t i) const { return codec_.decode(keys_[i]); }
  std::span<const Amplitude> coin_vector(std::size_t i) const {
    return {amplitudes_.data() + i * coin_size(), coin_size()};
  }

  std::span<const std::uint64_t> keys() const noexcept { return keys_; }
  std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
  std::span<Amplitude> amplitudes() noexcept { return amplitudes_; }

  WalkState& operator*=(Amplitude factor);

 private:
  LatticeCodec codec_;
  std::vector<std::uint64_t> keys_;
  std::vector<Amplitude> amplitudes_;
  int reach_ = 0;
};

/// Sparse probability mass over Z^d, keyed like WalkState.
class Distribution {
 public:
  explicit Distribution(std::size_t dim);
  Distribution(std::size_t dim, std::vector<std::uint64_t> keys,
               std::vector<double> masses);

  static Distribution from_entries(std::size_t dim,
                                   std::vector<std::pair<Position, double>> entries);

  std::size_t dim() const noexcept { return codec_.dim(); }
  const LatticeCodec& codec() const noexcept { return codec_; }
  std::size_t size() const noexcept { return keys_.size(); }
  bool empty() const noexcept { return keys_.empty(); }

  double mass(const Position& x) const;
  Position position(std::size_t i) const { return codec_.decode(keys_[i]); }
  std::span<const std::uint64_t> keys() const noexcept { return keys_; }
  std::span<const double> masses() const noexcept { return masses_; }

  double total() const;
  std::vector<std::pair<Position, double>> entries() const;

  /// this += weight * other, merging supports.
  void accumulate(const Distribution& other, double weight = 1.0);
  Distribution& operator*=(double factor);

 private:
  LatticeCodec codec_;
  std::vector<std::uint64_t> keys_;
  std::vector<double> masses_;
};

/// |0> (x) |s>, with |s> the uniform superposition over the 2d directions.
WalkState new_initial_state(std::size_t dim);

/// |0> (x) |chi> for a unit-norm coin vector chi of length 2d.
WalkState new_initial_state_with_coin_state(std::size_t dim,
                                            std::span<const Amplitude> coin);

double norm(const WalkState& state);

/// Traces out the coin: mass(x) = sum_a |psi(x, a)|^2.
Distribution position_distribution(const WalkState& state);

/// sum_x mass(x) |x|^2.
double second_moment(const Distribution& dist);

/// sum_{x,a} |psi(x, a)|^2 |x|^2 without materializing the distribution.
double second_moment(const WalkState& state);

/// Largest |psi(x,a) - phi(x,a)| over the union of supports.
double max_abs_difference(const WalkState& lhs, const WalkState& rhs);

/// Largest |p(x) - q(x)| over the union of supports.
double max_abs_difference(const Distribution& lhs, const Distribution& rhs);

/// (1/2) sum_x |p(x) - q(x)|.
double total_variation(const Distribution& lhs, const Distribution& rhs);

}  // namespace qwalk
