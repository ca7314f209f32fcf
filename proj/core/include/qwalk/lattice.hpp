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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace qwalk {

/// Largest lattice dimension supported by the packed position keys.
inline constexpr std::size_t kMaxDim = 8;

/// Raised when a request would exceed a configured size or memory guard.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One of the 2d unit steps on Z^d.
///
/// Index 2j is the +e_j step and index 2j+1 is the -e_j step, so the opposite
/// direction is `index ^ 1`.
class Direction {
 public:
  constexpr Direction() = default;
  constexpr explicit Direction(std::size_t index) : index_(index) {}

  static constexpr Direction along(std::size_t axis, int sign) {
    return Direction(2 * axis + (sign < 0 ? 1 : 0));
  }

  constexpr std::size_t index() const noexcept { return index_; }
  constexpr std::size_t axis() const noexcept { return index_ / 2; }
  constexpr int sign() const noexcept { return (index_ & 1U) ? -1 : 1; }
  constexpr Direction opposite() const noexcept { return Direction(index_ ^ 1U); }

  friend constexpr auto operator<=>(Direction, Direction) = default;

 private:
  std::size_t index_ = 0;
};

/// A point of Z^d, d <= kMaxDim.
class Position {
 public:
  Position() = default;
  explicit Position(std::size_t dim);
  Position(std::initializer_list<int> coords);

  std::size_t dim() const noexcept { return dim_; }
  int operator[](std::size_t axis) const { return coords_[axis]; }
  int& operator[](std::size_t axis) { return coords_[axis]; }

  std::int64_t squared_norm() const noexcept;
  std::int64_t l1_norm() const noexcept;

  Position& operator+=(Direction a);
  friend Position operator+(Position x, Direction a) { return x += a; }

  std::string to_string() const;

  friend auto operator<=>(const Position&, const Position&) = default;

 private:
  std::uint32_t dim_ = 0;
  std::array<std::int32_t, kMaxDim> coords_{};
};

/// e_a as a Position of the given dimension.
Position unit_vector(std::size_t dim, Direction a);

/// Number of lattice points x with sum_j |x_j| <= radius.
double l1_ball_count(std::size_t dim, std::size_t radius);

/// Packs positions into order-preserving 64-bit keys.
///
/// Each axis gets a fixed-width biased field, so translating by e_a adds a
/// constant (wrapping) offset to the key and keeps sorted key arrays sorted as
/// long as every coordinate stays within max_radius().
class LatticeCodec {
 public:
  explicit LatticeCodec(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t coin_size() const noexcept { return 2 * dim_; }
  int max_radius() const noexcept { return static_cast<int>(bias_ - 1); }

  std::uint64_t encode(const Position& x) const;
  Position decode(std::uint64_t key) const;
  std::uint64_t offset(Direction a) const noexcept { return offsets_[a.index()]; }
  std::int64_t squared_norm(std::uint64_t key) const noexcept;
  std::uint64_t origin() const noexcept { return origin_; }

 private:
  std::size_t dim_;
  unsigned bits_;
  std::uint64_t bias_;
  std::uint64_t mask_;
  std::uint64_t origin_;
  std::array<std::uint64_t, 2 * kMaxDim> offsets_{};
};

}  // namespace qwalk
